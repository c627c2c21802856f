#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "extdual/plocal.hpp"
#include "extdual/ring.hpp"

namespace extdual {

/// Covariant modules are ordinary graded frees: x^a * g sits in degree
/// |g| + |a|. Contravariant modules are R-duals: the dual generator keeps
/// the degree of its primal generator and ring elements lower degree, so
/// x^a * g* sits in degree |g| - |a|.
enum class Variance { covariant, contravariant };

struct GradedFreeModule {
  std::vector<std::string> labels;
  std::vector<int> degrees;
  Variance variance = Variance::covariant;

  std::size_t rank() const { return degrees.size(); }
  void add_generator(std::string label, int degree) {
    labels.push_back(std::move(label));
    degrees.push_back(degree);
  }
  friend bool operator==(const GradedFreeModule&, const GradedFreeModule&) = default;
};

/// One basis element x^a * g_j of a degree slice.
struct SliceElement {
  Monomial monomial;
  std::size_t generator;
  auto operator<=>(const SliceElement&) const = default;
};

/// Ordered Z_(p)-basis of a graded free module in one internal degree:
/// by generator index, then descending exponent vector.
class SliceBasis {
 public:
  SliceBasis() = default;
  explicit SliceBasis(std::vector<SliceElement> elements);

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const SliceElement& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<SliceElement>& elements() const { return elements_; }
  /// Index of an element, or size() if absent.
  std::size_t index_of(const SliceElement& e) const;

 private:
  std::vector<SliceElement> elements_;
  std::map<SliceElement, std::size_t> index_;
};

SliceBasis degree_slice(const GradedFreeModule& f, int t, const GradedRing& ring);

/// Degree-respecting R-linear map between graded frees, stored as a dense
/// matrix of polynomials; entry (i, j) is the coefficient of target
/// generator i in the image of source generator j.
///
/// With `shift` = s the map sends degree t to degree t + s. For covariant
/// modules entry (i, j) is homogeneous of degree |src_j| + s - |tgt_i|; for
/// contravariant ones of degree |tgt_i| - |src_j| - s.
struct GradedMap {
  GradedFreeModule source;
  GradedFreeModule target;
  int shift = 0;
  std::vector<PolyElement> entries;

  GradedMap() = default;
  GradedMap(GradedFreeModule src, GradedFreeModule tgt, int shift_by = 0);

  PolyElement& at(std::size_t i, std::size_t j) { return entries[i * source.rank() + j]; }
  const PolyElement& at(std::size_t i, std::size_t j) const { return entries[i * source.rank() + j]; }
  /// Image of source generator j as a polynomial vector over the target.
  std::vector<PolyElement> column(std::size_t j) const;
  void set_column(std::size_t j, const std::vector<PolyElement>& v);
  bool is_zero() const;
  friend bool operator==(const GradedMap&, const GradedMap&) = default;
};

/// Required degree of entry (i, j), following the variance convention.
int expected_entry_degree(const GradedMap& f, std::size_t i, std::size_t j);

/// Every nonzero entry homogeneous of its expected (nonnegative) degree.
bool is_homogeneous(const GradedMap& f, const GradedRing& ring);

/// Matrix of f from the slice at t to the slice at t + shift.
PLocalMatrix slice_map(const GradedMap& f, int t, const GradedRing& ring);

/// f ∘ g.
GradedMap compose(const GradedMap& f, const GradedMap& g);

/// Polynomial vector over a graded free <-> coordinates in a slice basis.
PLocalVector to_slice_vector(const std::vector<PolyElement>& v, const SliceBasis& basis);
std::vector<PolyElement> from_slice_vector(const PLocalVector& v, const SliceBasis& basis, std::size_t rank);

/// Multiplication by a homogeneous ring element of degree d, as a map F -> F
/// with shift +d (covariant) or -d (contravariant).
GradedMap multiplication_map(const GradedFreeModule& f, const PolyElement& element, const GradedRing& ring);

/// Identity-indexed dual: same generators, contravariant, and back.
GradedFreeModule dual_module(const GradedFreeModule& f);

/// Hom_R(f, R): transposed entries between the dual modules, shift negated.
GradedMap dual_map(const GradedMap& f);

}  // namespace extdual
