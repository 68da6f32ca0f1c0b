#pragma once

#include "blab/bohr.hpp"

#include <string_view>

namespace blab {

// Textual system descriptors:
//   trivial(g=Z16)
//   bohr(g=Z16; freqs=1,5; delta=0.2)
//   dilate(0.5, <system>)
//   double(<system>)
//   intersect(<system>; <system>; ...)
// Case-insensitive keywords; whitespace is ignored between tokens.
BourgainSystem parse_system(std::string_view text);

} // namespace blab
