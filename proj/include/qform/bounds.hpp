#pragma once

#include <set>
#include <string>
#include <vector>

#include "qform/forms.hpp"

namespace qform {

struct BoundConfig {
  long double epsilon = 0;
  long double constant = 1;
};

enum class BoundKind { Thm1, Thm2Diagonal, Thm3Lower, Eq13Petersson, Eq21DukeIwaniec, Lemma41Error, Lemma42Threshold };
const char* bound_kind_name(BoundKind k);
BoundKind parse_bound_kind(const std::string& s);

struct BoundTerm {
  std::string label;
  long double value = 0;
};

// `value` = combine(terms) as described by `composition`: "sum" adds the terms,
// "product" multiplies them.
struct BoundReport {
  BoundKind kind = BoundKind::Thm1;
  std::vector<std::pair<std::string, std::string>> inputs;
  long double value = 0;
  std::vector<long double> values;  // alternative values (thresholds, beta bounds)
  std::vector<BoundTerm> terms;
  std::string composition = "sum";
  // Recomputes the value from the trace.
  long double recompute() const;
};

// Norm bounds for f = theta(Q) - theta(gen Q): upper (thm1, thm2) and lower (thm3).
BoundReport thm1_bound(const QuadForm& q, const BoundConfig& cfg = {});
BoundReport thm2_bound(const QuadForm& q, const BoundConfig& cfg = {});
BoundReport thm3_bound(const QuadForm& q, const BoundConfig& cfg = {});
std::vector<BoundReport> norm_bounds(const QuadForm& q, const BoundConfig& cfg = {});

// Petersson coefficient bound a(n) << |f| n^(m/4-1/2) (1 + n^(1/4) (n,N)^(1/4) / N^(1/2)) (nN)^eps.
BoundReport eq13_bound(long double norm, int m, const Integer& n, const Integer& N, const BoundConfig& cfg = {});
// Ternary bound for n = t v^2 w^2; v <= 0 derives v from n and N (w = part coprime to N).
BoundReport eq21_bound(long double norm, const Integer& n, const Integer& N, Integer v = 0,
                       const BoundConfig& cfg = {});
// Splits n = t v^2 w^2 with t squarefree and (w, N) = 1; returns v.
Integer eq21_v(const Integer& n, const Integer& N);

// Largest divisor n~ of n with (n~, N^inf) squarefree.
Integer n_tilde(const Integer& n, const Integer& N);
BoundReport error_bound_m3(const QuadForm& q, const Integer& n, const BoundConfig& cfg = {});

// (n,N) is passed as an upper bound `gcd_nN`.
BoundReport threshold_m45(const QuadForm& q, const Rational& beta, const Integer& gcd_nN, const BoundConfig& cfg = {});

// ---- anisotropy -----------------------------------------------------------------

// Hilbert symbol (a, b)_p for nonzero rationals.
int hilbert_symbol(const Rational& a, const Rational& b, const Integer& p);
bool anisotropic_hilbert(const QuadForm& q, const Integer& p);
// Searches for a primitive p-adic zero by residue counting on the diagonalized
// form with scales folded mod 2 (mod p for odd p, mod 32 for p = 2).
bool anisotropic_search(const QuadForm& q, const Integer& p);
// Primes p | 2 det Q at which the ternary q is anisotropic (both methods must agree).
std::set<Integer> anisotropic_primes(const QuadForm& q);

}  // namespace qform
