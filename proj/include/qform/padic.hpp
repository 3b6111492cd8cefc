#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qform/forms.hpp"

namespace qform {

enum class BlockKind { Unit, H, Y };
const char* block_kind_name(BlockKind k);

// Unit block: q = p^scale * u * x^2.
// Binary block (p = 2): q = 2^scale * (alpha x^2 + beta x y + gamma y^2), beta odd.
struct JordanBlock {
  BlockKind kind = BlockKind::Unit;
  int scale = 0;
  Rational u, alpha, beta, gamma;  // p-integral, exact
  Integer unit_residue;            // u mod p^precision (unit blocks)
  int dim() const { return kind == BlockKind::Unit ? 1 : 2; }
  bool binary() const { return kind != BlockKind::Unit; }
};

struct JordanDecomposition {
  Integer p;
  int precision = 0;
  std::vector<JordanBlock> blocks;
  int r1 = 0;  // Y blocks
  int r2 = 0;  // all binary blocks
  // Exact p-integral transform with det +-1: T^T Q T is block diagonal in the
  // order of `blocks`. `witness` is T reduced mod p^precision.
  RatMatrix T;
  IntMatrix witness;

  // Scale per coordinate; a binary block contributes its scale twice.
  std::vector<int> scales() const;
  int dim() const;
};

// Reduces a p-integral rational modulo p^k.
Integer residue(const Rational& x, const Integer& p, int k);

JordanDecomposition jordan_decompose(const QuadForm& q, const Integer& p, int precision);
// Same decomposition without the precision check or residues.
JordanDecomposition jordan_exact(const QuadForm& q, const Integer& p);

// Product of p^nu(p) over the decompositions; they must cover every p | 2 det Q.
Integer level_from_local(const QuadForm& q, const std::vector<JordanDecomposition>& decomps);

// ---- residue counting -------------------------------------------------------

enum class Domain { Any, Multiple, Unit };  // Unit means "not divisible by p"; for
                                            // binary blocks "not both coordinates".

struct CountBlock {
  bool binary = false;
  int scale = 0;  // value is multiplied by p^scale
  Integer a, b, c;  // a x^2  or  a x^2 + b x y + c y^2 (binary, p = 2, b odd)
  Domain domain = Domain::Any;
};

// #{x mod p^k : sum of block values == n mod p^k, coordinates in their domains}.
Integer count_residues(const Integer& p, int k, const std::vector<CountBlock>& blocks, const Integer& n);

// Count blocks for q at p: the raw diagonal when q is diagonal, else Jordan data.
std::vector<CountBlock> count_blocks(const QuadForm& q, const Integer& p, int k);

// ---- densities ----------------------------------------------------------------

enum class DensityMethod { Bruteforce, YangOdd, SiegelUnramified, Auto };
const char* method_name(DensityMethod m);
DensityMethod parse_method(const std::string& s);

struct LocalDensity {
  Rational value;
  Integer p;
  Integer n;
  DensityMethod method = DensityMethod::Bruteforce;
  int a_used = 0;
  int agreements = 0;
  Rational surd_part = 0;
};

LocalDensity density(const QuadForm& q, const Integer& p, const Integer& n,
                     DensityMethod method = DensityMethod::Auto);
// Exact count-based density at a fixed exponent a (no stabilization).
Rational density_at(const QuadForm& q, const Integer& p, const Integer& n, int a);

// Odd-p closed form from scales nu_i and units u_i of q = sum u_i p^nu_i x_i^2.
LocalDensity yang_density(const std::vector<int>& nu, const std::vector<Integer>& units, const Integer& p,
                          const Integer& n);
// Density of the diagonal p-adic form sum u_i p^nu_i x_i^2 by residue counting.
Rational diagonal_density_bruteforce(const std::vector<int>& nu, const std::vector<Integer>& units,
                                     const Integer& p, const Integer& n, int* a_used = nullptr);

struct DensityProduct {
  long double value = 0;
  std::vector<LocalDensity> ramified;  // p | 2nN, exact
  long double unramified = 1;          // product over the other p <= P
  long double last_decade_change = 0;  // relative change between P/10 and P
  std::int64_t cutoff = 0;
};

DensityProduct density_product(const QuadForm& q, const Integer& n, std::int64_t P);

// ---- F(Q, s) -------------------------------------------------------------------

struct FInvariant {
  Rational s;
  std::vector<std::pair<Integer, Rational>> factors;  // prime -> exponent
  long double value = 0;
  std::optional<Integer> exact_integer;
};

FInvariant f_invariant(const QuadForm& q, const Rational& s);

// ---- Hanke classification and lower bounds ----------------------------------------

enum class SolutionType { Good, BadI, BadII, None };
const char* solution_type_name(SolutionType t);

struct HankeResult {
  SolutionType type = SolutionType::None;
  int nu = -1;
  long double bound = 0;
  std::optional<Rational> exact_bound;
};

HankeResult hanke_lower_bound(const QuadForm& q, const Integer& p, const Integer& n, bool want_bound = true);

// Reduction maps on odd-p diagonal data (scales, units):
//   type I:  q' = p q0 + q1 + p q2  (scale 0 -> 1, 1 -> 0, s >= 2 -> s - 1)
//   type II: q'' = q0 + p q1 + q2   (s >= 2 -> s - 2)
std::vector<int> reduce_scales_type1(const std::vector<int>& nu);
std::vector<int> reduce_scales_type2(const std::vector<int>& nu);

}  // namespace qform
