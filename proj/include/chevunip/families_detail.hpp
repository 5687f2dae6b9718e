#pragma once

// build-internal family constructors shared between the catalog translation
// units; not part of the public surface
#include "chevunip/families.hpp"

namespace chevunip {

CharFamily f4_p3_family();
CharFamily e_p3_family(int k); // k = 6, 7, 8
CharFamily e8_p5_family();

} // namespace chevunip
