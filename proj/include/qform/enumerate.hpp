#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qform/forms.hpp"

namespace qform {

struct EnumOptions {
  std::uint64_t node_budget = 1000000000ULL;
  int threads = 1;
};

struct ThetaCoefficients {
  std::int64_t X = 0;
  std::vector<Integer> r;  // r[n-1] = r(Q, n), n = 1..X
  std::uint64_t nodes = 0;
  const Integer& at(std::int64_t n) const { return r.at(static_cast<std::size_t>(n - 1)); }
};

// Fincke-Pohst style enumeration over the coordinates of siegel_reduce.
// Coordinates y are reduced coordinates; x = U y.
class Enumerator {
 public:
  explicit Enumerator(const QuadForm& q, EnumOptions opts = {});

  const ReducedForm& reduced() const { return red_; }
  int dim() const { return m_; }
  std::uint64_t nodes() const { return nodes_; }

  // Visits every nonzero y with q(y) <= bound in lexicographic order of
  // (y_{m-1}, ..., y_0); stop early by returning false.
  void for_each(std::int64_t bound,
                const std::function<bool(const std::vector<std::int64_t>&, std::int64_t)>& visit);
  // Number of y with q(y) = n (n >= 1).
  Integer count(std::int64_t n);
  // r(Q,k) for 1 <= k <= X in one pass.
  std::vector<Integer> bin_upto(std::int64_t X);
  // Solutions of q(y) = n in lexicographic order, at most limit of them.
  std::vector<std::vector<std::int64_t>> solutions(std::int64_t n, std::size_t limit);

  std::vector<Integer> to_original(const std::vector<std::int64_t>& y) const;

 private:
  struct Walk;
  QuadForm form_;
  EnumOptions opts_;
  ReducedForm red_;
  int m_;
  std::vector<std::int64_t> g_;   // reduced gram, row major
  std::vector<double> a_, v_;     // LDL data as doubles
  std::uint64_t nodes_ = 0;
};

Integer count_representations(const QuadForm& q, const Integer& n, const EnumOptions& opts = {});
ThetaCoefficients theta_coefficients(const QuadForm& q, std::int64_t X, const EnumOptions& opts = {});
std::vector<std::vector<Integer>> representations_list(const QuadForm& q, const Integer& n,
                                                       std::size_t limit,
                                                       const EnumOptions& opts = {});

}  // namespace qform
