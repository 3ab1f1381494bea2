// Presentation files, builtin examples and the connection that travels with
// a presentation.
#pragma once

#include <string>
#include <vector>

#include "rinehart/lie_rinehart.hpp"

namespace rinehart {

struct Algebra {
  LieRinehart lr;
  Connection connection;
  /// Euler element for the contraction check, a polynomial in the Sym_R(L)
  /// variables x_1..x_n, xi_1..xi_d.
  std::optional<Polynomial> euler;
};

/// Parses the JSON presentation format. Throws SpecError naming the field.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Algebra algebra_from_json(const std::string& text);
Algebra algebra_from_file(const std::string& path);
std::string algebra_to_json(const Algebra& a);

Algebra weyl(std::size_t n);
Algebra lie_sl2();
Algebra lie_abelian(std::size_t n);
/// sl2 acting on K[x,y] by e = x d/dy, f = y d/dx, h = x d/dx - y d/dy.
Algebra semidirect_sl2();
/// Line arrangement in the plane given by linear forms in x, y, one of them
/// x itself: L is spanned by the Euler field E and D = F d/dy where F is the
/// product of the other forms.
Algebra arrangement(const std::vector<std::string>& forms);

/// weyl:N, lie:sl2, lie:abelian:N, semidirect:sl2, arrangement:3,
/// arrangement:4, arrangement:<form>;<form>;...
Algebra builtin(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace rinehart
