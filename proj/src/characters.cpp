#include "chevunip/characters.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace chevunip {

namespace {

std::string group_key(char t, int n, int p, int f, const std::set<int>& N) {
    std::string k = std::string(1, t) + std::to_string(n) + "/" + std::to_string(p) + "^" +
                    std::to_string(f);
    for (int r : N) k += "," + std::to_string(r);
    return k;
}

} // namespace

const UnipotentGroup& ugroup(char t, int n, int p, int f) {
    return ugroup_quotient(t, n, p, f, {});
}

const UnipotentGroup& ugroup_quotient(char t, int n, int p, int f, const std::set<int>& N) {
    static std::map<std::string, std::unique_ptr<UnipotentGroup>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = group_key(t, n, p, f, N);
    auto it = cache.find(key);
    if (it == cache.end()) {
        const auto& rs = root_system(t, n);
        const auto& F = field(p, f);
        if (N.empty()) {
            it = cache.emplace(key, std::make_unique<UnipotentGroup>(rs, F)).first;
        } else {
            UnipotentGroup parent(rs, F);
            it = cache.emplace(key, std::make_unique<UnipotentGroup>(parent, N)).first;
        }
    }
    return *it->second;
}

void LinearForm::set_coeff(int root, Fq c) {
    int i = K.leg_index_of(root);
    if (i < 0) throw ArgumentError("LinearForm: no leg anchored at root " + std::to_string(root));
    if (leg_coeff.size() != K.legs().size()) leg_coeff.assign(K.legs().size(), 0);
    leg_coeff[static_cast<size_t>(i)] = c;
}

Fq LinearForm::coeff_at(int root) const {
    int i = K.leg_index_of(root);
    if (i < 0) throw ArgumentError("LinearForm: no leg anchored at root " + std::to_string(root));
    return leg_coeff.at(static_cast<size_t>(i));
}

int LinearForm::exponent_params(const std::vector<Fq>& params) const {
    const auto& F = G->F();
    Fq acc = 0;
    for (size_t i = 0; i < params.size(); ++i)
        if (params[i] != 0 && leg_coeff[i] != 0) acc = F.add(acc, F.mul(leg_coeff[i], params[i]));
    return F.trace(acc);
}

int LinearForm::exponent(const GroupElem& g) const {
    std::vector<Fq> params;
    if (!K.member(g, &params))
        throw ArgumentError("LinearForm: element outside the carrier subgroup");
    return exponent_params(params);
}

Cyclo LinearForm::value(const GroupElem& g) const {
    return Cyclo::zeta_power(G->F().p(), exponent(g));
}

bool LinearForm::is_multiplicative(std::string* witness) const {
    auto gens = K.generators();
    // commutator closure: the form must be defined and vanish there
    std::vector<GroupElem> comms;
    std::set<std::string> seen;
    bool ok = true;
    auto key_of = [](const GroupElem& g) {
        std::string k;
        for (Fq t : g) k += static_cast<char>('0' + t % 64), k += static_cast<char>('0' + t / 64);
        return k;
    };
    auto push = [&](const GroupElem& c) {
        if (G->is_identity(c)) return;
        if (seen.insert(key_of(c)).second) comms.push_back(c);
    };
    for (size_t i = 0; i < gens.size() && ok; ++i)
        for (size_t j = i + 1; j < gens.size(); ++j) push(G->commutator(gens[i], gens[j]));
    for (size_t head = 0; head < comms.size(); ++head) {
        GroupElem c = comms[head];
        for (const auto& g : gens) push(G->commutator(c, g));
        if (comms.size() > 40000) throw CapacityError("commutator closure too large");
    }
    for (const auto& c : comms) {
        std::vector<Fq> params;
        if (!K.member(c, &params)) {
            if (witness) *witness = "K not closed: commutator " + G->elem_str(c) + " leaves it";
            return false;
        }
        if (exponent_params(params) != 0) {
            if (witness) *witness = "form nonzero on commutator " + G->elem_str(c);
            return false;
        }
    }
    int p = G->F().p();
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = 0; j < gens.size(); ++j) {
            GroupElem ab = G->multiply(gens[i], gens[j]);
            std::vector<Fq> params;
            if (!K.member(ab, &params)) {
                if (witness) *witness = "K not closed under generator products";
                return false;
            }
            int lhs = exponent_params(params);
            int rhs = (exponent(gens[i]) + exponent(gens[j])) % p;
            if (lhs != rhs) {
                if (witness)
                    *witness = "form not additive on generator product " + G->elem_str(ab);
                return false;
            }
            // one level of triples against each generator
            for (size_t k = 0; k < gens.size(); ++k) {
                GroupElem abc = G->multiply(ab, gens[k]);
                std::vector<Fq> p3;
                if (!K.member(abc, &p3)) {
                    if (witness) *witness = "K not closed under generator products";
                    return false;
                }
                int want = (lhs + exponent(gens[k])) % p;
                if (exponent_params(p3) != want) {
                    if (witness)
                        *witness = "form not additive on generator triple " + G->elem_str(abc);
                    return false;
                }
            }
        }
    return true;
}

Character Character::induced(LinearForm psi, DegreeExpr degree_expr, std::string label,
                             std::string family_id) {
    Character c;
    c.psi_ = std::move(psi);
    c.degree_expr_ = degree_expr;
    c.label_ = std::move(label);
    c.family_id_ = std::move(family_id);
    return c;
}

Rat Character::degree() const {
    return Rat(static_cast<std::int64_t>(psi_.K.index_u64()));
}

const std::vector<Cyclo>& Character::table(std::uint64_t guard) const {
    if (table_) return *table_;
    const auto& G = *psi_.G;
    std::uint64_t n = G.order();
    if (n > guard) throw CapacityError("character table exceeds guard");
    auto kparams = psi_.K.enumerate_params(guard);
    auto reps = transversal(G, psi_.K, guard);
    int p = G.F().p();
    auto tbl = std::make_shared<std::vector<Cyclo>>(n, Cyclo(p));
    std::vector<Cyclo> zeta;
    for (int k = 0; k < p; ++k) zeta.push_back(Cyclo::zeta_power(p, k));
    for (const auto& x : reps) {
        GroupElem xinv = G.inverse(x);
        for (const auto& params : kparams) {
            GroupElem k = psi_.K.element(params);
            GroupElem conj = G.multiply(G.multiply(x, k), xinv);
            (*tbl)[G.rank_of(conj)] += zeta[static_cast<size_t>(psi_.exponent_params(params))];
        }
    }
    table_ = tbl;
    return *table_;
}

Cyclo Character::value(const GroupElem& g) const { return table()[psi_.G->rank_of(g)]; }

Rat Character::norm(std::uint64_t guard) const {
    const auto& tbl = table(guard);
    Cyclo acc(psi_.G->F().p());
    for (const auto& v : tbl) acc += v.norm_sq();
    if (!acc.is_rational()) throw std::logic_error("norm: sum not rational");
    return Rat(acc.rational_part(), static_cast<std::int64_t>(psi_.G->order()));
}

Rat Character::mackey_norm(std::uint64_t guard) const { return mackey_norm_of_form(psi_, guard); }

Rat mackey_norm_of_form(const LinearForm& lambda, std::uint64_t guard) {
    const auto& G = *lambda.G;
    auto kparams = lambda.K.enumerate_params(guard);
    std::vector<GroupElem> kelems;
    kelems.reserve(kparams.size());
    for (const auto& p : kparams) kelems.push_back(lambda.K.element(p));
    auto reps = transversal(G, lambda.K, guard);
    Rat acc(0);
    std::int64_t ksize = static_cast<std::int64_t>(kelems.size());
    std::vector<Fq> conj_params;
    for (const auto& x : reps) {
        GroupElem xinv = G.inverse(x);
        std::int64_t overlap = 0;
        bool agree = true;
        for (size_t i = 0; i < kelems.size(); ++i) {
            GroupElem conj = G.multiply(G.multiply(x, kelems[i]), xinv);
            if (!lambda.K.member(conj, &conj_params)) continue;
            ++overlap;
            if (agree &&
                lambda.exponent_params(conj_params) != lambda.exponent_params(kparams[i]))
                agree = false;
        }
        if (agree) acc += Rat(overlap, ksize);
    }
    if (!acc.is_integer()) throw std::logic_error("mackey norm: non-integral result");
    return acc;
}

bool Character::restricts_as(const CoordSubgroup& Z, const LinearForm& lambda) const {
    Rat d = degree();
    for (const auto& z : Z.generators()) {
        Cyclo expect = lambda.value(z) * d.as_integer();
        if (value(z) != expect) return false;
    }
    return true;
}

Rat inner_product(const Character& a, const Character& b, std::uint64_t guard) {
    if (a.form().G != b.form().G) throw ArgumentError("inner_product: mixed groups");
    const auto& ta = a.table(guard);
    const auto& tb = b.table(guard);
    Cyclo acc(a.group().F().p());
    for (size_t i = 0; i < ta.size(); ++i) acc += ta[i] * tb[i].conj();
    if (!acc.is_rational()) throw std::logic_error("inner product: not rational");
    return Rat(acc.rational_part(), static_cast<std::int64_t>(a.group().order()));
}

bool is_irreducible(const Character& chi, std::uint64_t guard) {
    return chi.mackey_norm(guard) == Rat(1);
}

std::set<int> central_root_support(const Character& chi) {
    const auto& G = chi.group();
    const auto& F = G.F();
    std::set<int> out;
    std::int64_t deg = chi.degree().as_integer();
    Cyclo deg_sq = Cyclo(F.p(), deg * deg);
    for (int r : G.live_roots()) {
        bool in_center = true, in_kernel = true;
        for (int t = 1; t < F.q(); ++t) {
            Cyclo v = chi.value(G.root_elem(r, static_cast<Fq>(t)));
            if (v.norm_sq() != deg_sq) in_center = false;
            if (v != Cyclo(F.p(), deg)) in_kernel = false;
        }
        if (in_center && !in_kernel) out.insert(r);
    }
    return out;
}

Character inflate_from_quotient(const UnipotentGroup& parent, const Character& chi) {
    const auto& T = chi.group();
    const auto& psi = chi.form();
    std::vector<Leg> legs;
    std::vector<std::pair<int, Fq>> coeff_by_anchor;
    for (size_t i = 0; i < psi.K.legs().size(); ++i) {
        const Leg& leg = psi.K.legs()[i];
        coeff_by_anchor.push_back({psi.K.leg_min_root(i), psi.leg_coeff[i]});
        if (leg.kind == Leg::Kind::Power) {
            GroupElem gen = parent.identity();
            for (int k = 0; k < T.num_live(); ++k) {
                Fq t = leg.power_gen[static_cast<size_t>(k)];
                // rebuild letter by letter; canonical coordinates can differ
                // between parent and quotient
                if (t != 0) gen = parent.multiply(gen, parent.root_elem(T.parent_root(k), t));
            }
            legs.push_back(Leg::power(std::move(gen)));
        } else {
            legs.push_back(leg);
        }
    }
    std::set<int> live(T.live_roots().begin(), T.live_roots().end());
    for (int r : parent.live_roots())
        if (!live.count(r)) legs.push_back(Leg::full_root(r));
    LinearForm form;
    form.G = &parent;
    form.K = CoordSubgroup(parent, std::move(legs));
    form.leg_coeff.assign(form.K.legs().size(), 0);
    for (auto [root, c] : coeff_by_anchor) form.set_coeff(root, c);
    return Character::induced(std::move(form), chi.degree_expr(), chi.label(), chi.family_id());
}

std::string Character::json(bool with_values) const {
    std::ostringstream os;
    os << "{\"carrier\":\"" << psi_.G->rs().name() << "\",\"degree\":{\"p_denominator\":"
       << degree_expr_.p_den << ",\"q_exp\":" << degree_expr_.q_exp << "},\"family\":\""
       << family_id_ << "\",\"label\":\"" << label_ << "\"";
    if (with_values) {
        os << ",\"values\":[";
        const auto& tbl = table();
        for (size_t i = 0; i < tbl.size(); ++i) {
            if (i) os << ",";
            os << "\"" << tbl[i].str() << "\"";
        }
        os << "]";
    }
    os << "}";
    return os.str();
}

} // namespace chevunip
