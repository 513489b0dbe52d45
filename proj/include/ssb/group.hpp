#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ssb/linalg.hpp"

namespace ssb {

// Validation failure while building a group from a table. `triple` names the
// offending elements when the failure is an associativity violation.
struct GroupLoadError : InputError {
  GroupLoadError(const std::string& what, std::vector<int> elements = {})
      : InputError(what), elements(std::move(elements)) {}
  std::vector<int> elements;
};

/// Finite group given by its multiplication table. Element 0 is the identity.
/// Instances are immutable and shared through `std::shared_ptr<const FiniteGroup>`.
class FiniteGroup {
 public:
  /// Validates closure, associativity, identity and inverses, then computes
  /// conjugacy classes. Throws GroupLoadError.
  static std::shared_ptr<const FiniteGroup> from_table(std::string name,
                                                       std::vector<std::vector<int>> table);

  /// Closure of the given permutations (each a bijection of 0..k-1) under
  /// composition; (p*q)(x) = p(q(x)). Element 0 is the identity permutation.
  static std::shared_ptr<const FiniteGroup> from_permutations(
      std::string name, const std::vector<std::vector<int>>& generators,
      std::vector<std::vector<int>>* elements_out = nullptr);

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return 0; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  int conj(int x, int g) const { return mul(mul(x, g), inv(x)); }  // x g x^-1
  const std::vector<std::vector<int>>& table() const { return table_; }

  const std::vector<std::vector<int>>& classes() const { return classes_; }
  int num_classes() const { return static_cast<int>(classes_.size()); }
  int class_of(int g) const { return class_of_[g]; }
  int element_order(int g) const;

 private:
  FiniteGroup() = default;
  std::string name_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<std::vector<int>> classes_;  // ordered by smallest member
  std::vector<int> class_of_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Subgroup H <= G. Members are sorted parent indices; `as_group()` is H as a
/// standalone group whose element i corresponds to parent element members()[i].
class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<int> members, std::string label = {});
  static Subgroup whole(GroupPtr parent);
  static Subgroup trivial(GroupPtr parent);
  static Subgroup generated_by(GroupPtr parent, const std::vector<int>& generators,
                               std::string label = {});

  const GroupPtr& parent() const { return parent_; }
  const std::vector<int>& members() const { return members_; }
  const GroupPtr& as_group() const { return group_; }
  const std::string& label() const { return label_; }
  int order() const { return static_cast<int>(members_.size()); }
  int index() const { return parent_->order() / order(); }
  bool contains(int g) const { return local_[g] >= 0; }
  int local_index(int g) const { return local_[g]; }  // -1 when g is not in H
  int parent_index(int local) const { return members_[local]; }
  bool is_normal() const;
  bool operator==(const Subgroup& other) const { return members_ == other.members_; }

 private:
  GroupPtr parent_;
  std::vector<int> members_;
  std::vector<int> local_;
  GroupPtr group_;
  std::string label_;
};

enum class CosetSide { Left, Right };

/// Cosets of H in G. Right cosets Hg form H\G with right translation
/// Hx -> Hxg; left cosets gH form G/H with left translation xH -> gxH.
/// Representatives are the smallest index in each coset, cosets are ordered by
/// representative, so coset 0 always contains the identity.
struct CosetSpace {
  GroupPtr group;
  std::vector<int> subgroup;
  CosetSide side;
  std::vector<int> representatives;
  std::vector<int> coset_of;
  std::vector<std::vector<int>> translation_action;  // [g][coset] -> coset

  int size() const { return static_cast<int>(representatives.size()); }
  // Writes g = h * rep (right cosets) or g = rep * h (left cosets); returns the
  // coset and stores h.
  int decompose(int g, int& h) const;
};

CosetSpace coset_space(const Subgroup& h, CosetSide side);

struct NormalizerQuotient {
  Subgroup normalizer;
  int quotient_order;
};

NormalizerQuotient normalizer_quotient(const Subgroup& h);

}  // namespace ssb
