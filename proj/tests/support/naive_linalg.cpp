#include "naive_linalg.hpp"

// Explicit instantiations so the oracle is compiled once with full warnings.
namespace homdec::oracle {
template std::size_t naive_rank<Rational>(Matrix<Rational>);
template std::size_t naive_rank<Fp>(Matrix<Fp>);
template bool naive_solvable<Rational>(const Matrix<Rational>&, const Vec<Rational>&);
}  // namespace homdec::oracle
