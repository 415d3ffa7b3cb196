#pragma once

#include <string>

namespace cashtag {

// Classic Porter suffix-stripping stemmer (1980 algorithm).  Input is expected
// to be lowercase; words of length 1 or 2 are returned unchanged.  Characters
// outside a-z (digits in our token alphabet) are treated as consonants, which
// leaves digit-bearing tokens like "emc2" alone.
std::string porter_stem(const std::string &word);

}  // namespace cashtag
