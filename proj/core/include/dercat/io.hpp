#ifndef DERCAT_IO_HPP
#define DERCAT_IO_HPP

#include "dercat/complex.hpp"
#include "dercat/numerics.hpp"

#include <string>
#include <string_view>

namespace dercat {

// JSON interchange documents. A complex looks like
//
//   {"n": 1,
//    "terms": {"-1": [-1], "0": [0]},
//    "diffs": {"-1": [["x1"]]}}
//
// where diffs[i] has one row per summand of term i+1 and one column per
// summand of term i. Absent differentials are zero. Scalars are integers or
// "a/b" strings.
//
// Every parser throws ParseError naming `origin`, and either the line and
// column of malformed JSON or the path of the offending field.

LineBundleComplex parse_complex(std::string_view text, const std::string& origin = "<input>");

/// {"source": complex, "target": complex, "maps": {"0": [[...]], ...}}
ChainMap parse_chain_map(std::string_view text, const std::string& origin = "<input>");

/// {"m": 1, "n": 1, "grid": [[0, 1], [1, 0]]}, grid[i][j] the h1^i h2^j coefficient.
CorrespondenceClass parse_correspondence(std::string_view text, const std::string& origin = "<input>");

/// {"n": 2, "coeffs": [1, 1, "1/2"]}
ChernPolynomial parse_chern_polynomial(std::string_view text, const std::string& origin = "<input>");

/// {"grid": [[1, 0], [0, 1]]} or a bare grid; grid[p][q] = h^{p,q}.
HodgeTable parse_hodge_table(std::string_view text, const std::string& origin = "<input>");

/// Pretty JSON with degrees in increasing order; parse_complex reads it back.
std::string format_complex(const LineBundleComplex& c);
std::string format_chain_map(const ChainMap& f);

}  // namespace dercat

#endif  // DERCAT_IO_HPP
