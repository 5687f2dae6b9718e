#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chevunip/verify.hpp"

using namespace chevunip;

TEST_CASE("completeness checks, polynomial and numeric") {
    auto b2 = completeness_check(b2_catalog(), 1);
    CHECK(b2.pass());
    for (int p : {2, 3, 5}) {
        auto cat = g2_catalog(p);
        auto formula = g2_count_formula(p);
        CHECK(completeness_check(cat, 1, &formula).pass());
    }
}

TEST_CASE("class count oracle") {
    CHECK(class_count_oracle(ugroup('B', 2, 2, 1)) == 10);
    CHECK(class_count_oracle(ugroup('G', 2, 2, 1)) == 16);
    CHECK(class_count_oracle(ugroup('G', 2, 3, 1)) == 73);
}

TEST_CASE("brute verification of one family") {
    auto cat = b2_catalog();
    for (const auto& fam : cat.families)
        if (fam.id == "B2.p2.qhalf") {
            auto rep = brute_verify_family(fam, 1);
            CHECK(rep.pass());
        }
}

TEST_CASE("uniqueness: q/2 at q=4 is distinctive, q=2 degenerates to linears") {
    auto cat = g2_catalog(2);
    auto u4 = uniqueness_check(cat, "G2.p2.F4", 2);
    CHECK(u4.pass());
    bool found_clean = false;
    for (auto& c : u4.checks)
        if (c.name.find("no other family shares degree") != std::string::npos) found_clean = true;
    CHECK(found_clean);

    auto u2 = uniqueness_check(cat, "G2.p2.F4", 1);
    CHECK(u2.pass());
    bool degenerate = false;
    for (auto& c : u2.checks)
        if (c.name.find("degenerate collision") != std::string::npos) degenerate = true;
    CHECK(degenerate);

    // p = 3 at q = 3: q/3 = 1 collides with the linears; still disjoint
    auto cat3 = g2_catalog(3);
    CHECK(uniqueness_check(cat3, "G2.p3.F4", 1).pass());

    // B2 q=4
    CHECK(uniqueness_check(b2_catalog(), "B2.p2.qhalf", 2).pass());
}

TEST_CASE("report serialization") {
    auto rep = completeness_check(b2_catalog(), 1);
    auto js = rep.json();
    CHECK(js.find("\"pass\":true") != std::string::npos);
    CHECK(js.find("\"plan\":\"completeness B2.p2\"") != std::string::npos);
    CHECK(js.find("\"outcome\":\"pass\"") != std::string::npos);
    CHECK(rep.text().find("PASS") != std::string::npos);
}

TEST_CASE("structural audits wrap family audits") {
    auto rep = structural_audit(bn_cn_family('B', 3), 1);
    CHECK(rep.pass());
    for (auto& c : rep.checks) CHECK(c.level == "structural");
}

TEST_CASE("verification failure carries a witness") {
    // a deliberately wrong catalog: one family dropped breaks completeness
    auto cat = g2_catalog(2);
    cat.families.pop_back();
    auto rep = completeness_check(cat, 1);
    CHECK_FALSE(rep.pass());
    bool witnessed = false;
    for (auto& c : rep.checks)
        if (!c.pass && !c.witness.empty()) witnessed = true;
    CHECK(witnessed);
}
