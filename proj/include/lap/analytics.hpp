#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lap/residues.hpp"
#include "lap/scan.hpp"

namespace lap {

// Exact rational, always normalized with den > 0 and gcd(|num|, den) = 1.
struct Rational {
  int64_t num = 0;
  int64_t den = 1;

  Rational() = default;
  Rational(int64_t n, int64_t d);
  Rational operator*(const Rational& o) const;
  double to_double() const;
  bool operator==(const Rational&) const = default;
};

// L(x;4,3) in O(log x): the number of descents into residues 1 or 2 mod 4
// along x, floor(x/2), floor(x/4), ...; equivalently the recursion
// L(x) = s1(x) + L(floor(x/2)) with s1(y) = [y mod 4 in {1,2}], L(0) = 0.
// Equals the number of digit transitions in binary x (leading 0->1 included).
uint32_t explicit_l43(uint64_t x);

// lhs = sum over odd n <= x of the Dirichlet convolution (chi4 * lambda4)(n)
// with lambda4 = lambda(.;4,1); rhs = #{odd m <= sqrt(x)}.  The convolution
// is the indicator of odd squares, so lhs = rhs exactly.  lhs is evaluated
// as the literal double sum (hyperbola order), not via the identity.
struct ConvolutionCheck {
  int64_t lhs = 0;
  int64_t rhs = 0;
};
ConvolutionCheck chi4_convolution_check(uint64_t x);  // 1 <= x <= 2*10^7

// For residue classes b with gcd(b, q) > 1: the class contains at most one
// prime d = gcd(b, q) (present iff d is prime and d = b mod q), and the
// density constant is the product of (d-1)/(d+1) over the present primes
// (empty product = 1).  Throws std::domain_error if any class is coprime.
Rational product_constant(uint32_t q, const std::vector<uint32_t>& residues);

// kappa = #(classes coprime to q) / phi(q).
Rational sifting_density(const ResidueSet& rs);

enum class SignPrediction : int8_t { minus = -1, not_applicable = 0, plus = 1 };
enum class RHalfClass : uint8_t {
  not_applicable,             // 2r != phi(q)
  character_like,             // lambda restricted to R matches a real character
  complement_of_character_like,
  neither
};

// Predicted main-term shape for L(x;q,R) with R of r coprime classes:
// b0 * x * (log x)^{2r/phi(q) - 2}, b0 > 0 iff 2r < phi(q), b0 < 0 iff
// 2r > phi(q).  At the balance point 2r = phi(q) the power term changes
// regime instead: character-like sets grow like log x (power_exponent 0)
// and their complements like sqrt(x) (power_exponent 1/2).
struct AsymptoticPrediction {
  double power_exponent = 1;
  double log_exponent = 0;
  Rational log_exponent_exact;  // (2r - 2*phi)/phi
  SignPrediction sign_of_b0 = SignPrediction::not_applicable;
  RHalfClass r_half_class = RHalfClass::not_applicable;
};
// Throws std::domain_error when rs contains a class not coprime to q.
AsymptoticPrediction predicted_asymptote(const ResidueSet& rs);

// Spacing constants for the gaps between the x where L(x;4,3) increments:
// C = (1 + 1/sqrt(3)) / (2 (1 - 2^{-1/2})) = 2.6927...,
// C_refined = (1 + 1/sqrt(3) - 1/sqrt(5) + 1/sqrt(7)) / (2 (1 - 2^{-1/2}))
//           = 2.5744...
struct GapsConstants {
  double c = 0;
  double c_refined = 0;
};
GapsConstants gaps_constants();
// Partial sum (1 + 1/sqrt(3)) * sum_{k=0}^{kmax} 2^{-k/2 - 1}.
double gaps_partial_sum(uint32_t kmax);

struct FitResult {
  std::string model;
  std::vector<double> coefficients;
  double residual_norm = 0;  // l2 over the fitted grid points
  uint64_t x_lo = 0, x_hi = 0;
  uint64_t points = 0;
  // sqrt model only: the predicted coefficient (1 + 2^{-1/2}) / L(1/2, chi4)
  // = 2.5567... for the (q=4, {1}) series; NaN otherwise.
  double sqrt_prediction = 0;
};

// Least squares c for value = c * sqrt(x) over checkpoints with
// x_lo <= x <= x_hi.  Throws std::domain_error when no checkpoint lies in
// range.
FitResult sqrt_coefficient(const SummatorySeries& s, uint64_t x_lo,
                           uint64_t x_hi);

// Least squares b0 for value = b0 * x^power_exponent * (log x)^log_exponent
// with both exponents fixed.  Throws std::domain_error on an empty range.
FitResult log_power_fit(const SummatorySeries& s, double power_exponent,
                        double log_exponent, uint64_t x_lo, uint64_t x_hi);

}  // namespace lap
