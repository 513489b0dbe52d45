#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssb/group.hpp"
#include "ssb/linalg.hpp"

namespace ssb {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Unitary matrix representation, one matrix per group element.
struct UnitaryRep {
  GroupPtr group;
  std::vector<Matrix> matrices;
  std::string label;

  int dim() const { return matrices.empty() ? 0 : static_cast<int>(matrices.front().rows()); }
  cd character(int g) const { return matrices[g].trace(); }
  std::vector<cd> element_characters() const;
  std::vector<cd> class_characters() const;
  double homomorphism_residual() const;
  double unitarity_residual() const;
  /// Throws ConsistencyError when a residual exceeds `tolerance` or the
  /// character is not a class function.
  void validate(double tolerance = tol::rep) const;
};

struct CharacterTable {
  GroupPtr group;
  std::vector<std::vector<cd>> rows;  // rows[i][class]
  std::vector<int> dims;

  int size() const { return static_cast<int>(rows.size()); }
  cd value(int row, int g) const { return rows[row][group->class_of(g)]; }
  std::vector<cd> element_values(int row) const;
};

/// Class-sum (Burnside) method: characters are read off the common
/// eigenvectors of the class multiplication matrices. Rows are ordered by
/// dimension, then by class values; row 0 is the trivial character.
CharacterTable character_table(const GroupPtr& g, std::uint64_t seed = kDefaultSeed);

/// Explicit irreps aligned with `table`, by block-diagonalizing the regular
/// representation with a random element of its commutant.
std::vector<UnitaryRep> irreps(const GroupPtr& g, const CharacterTable& table,
                               std::uint64_t seed = kDefaultSeed);

/// Character table + irreps of one group, computed together.
struct RepresentationData {
  GroupPtr group;
  CharacterTable table;
  std::vector<UnitaryRep> irreps;

  /// Uses `supplied` irreps (validated, matched to the table) when given.
  static RepresentationData compute(const GroupPtr& g, std::uint64_t seed = kDefaultSeed,
                                    const std::vector<UnitaryRep>* supplied = nullptr);
  int size() const { return table.size(); }
};

UnitaryRep regular_rep(const GroupPtr& g);
UnitaryRep trivial_rep(const GroupPtr& g, int dim = 1);
UnitaryRep direct_sum(const std::vector<UnitaryRep>& reps, std::string label = {});

/// (1/|G|) sum_g a(g) conj(b(g)) over per-element character values.
cd character_inner(const std::vector<cd>& a, const std::vector<cd>& b);

/// Rounds to a non-negative integer or throws ConsistencyError.
int round_multiplicity(cd value);

/// Multiplicity of each irreducible character in `rep`.
std::vector<int> decompose(const UnitaryRep& rep, const CharacterTable& table);

struct Restriction {
  UnitaryRep rep;                    // over h.as_group()
  std::vector<int> multiplicities;   // over irreps of H
};

Restriction restrict(const UnitaryRep& gamma, const Subgroup& h, const CharacterTable& table_h);

/// Induced representation on blocks indexed by left coset representatives.
UnitaryRep induce(const UnitaryRep& eta, const Subgroup& h);

/// dim Hom_H(eta, gamma restricted to H), from characters.
int branching_multiplicity(const Subgroup& h, const std::vector<cd>& eta_chars,
                           const std::vector<cd>& gamma_chars);

struct BranchingTable {
  std::vector<std::vector<int>> multiplicities;  // [eta][gamma]
};

BranchingTable branching_table(const Subgroup& h, const CharacterTable& table_h,
                               const CharacterTable& table_g);

struct FrobeniusPair {
  int via_restriction;  // dim Hom_H(eta, gamma|H)
  int via_induction;    // dim Hom_G(Ind eta, gamma)
};

FrobeniusPair frobenius_check(const Subgroup& h, const UnitaryRep& eta, const UnitaryRep& gamma);

struct MinimalExtension {
  std::vector<int> multiplicities;  // of each G-irrep in gamma
  UnitaryRep gamma;
  std::vector<int> complement;      // eta' as multiplicities over H-irreps
  int complement_dim = 0;
};

/// Smallest G-representation whose restriction contains eta. Ties are broken
/// by the sorted list of irrep indices used (lexicographically smallest).
MinimalExtension extend_rep_minimal(const UnitaryRep& eta, const Subgroup& h,
                                    const RepresentationData& g_data,
                                    const RepresentationData& h_data);

/// Orders candidate multiplicity vectors for extend_rep_minimal's tie-break.
bool extension_preferred(const std::vector<int>& a, const std::vector<int>& b);

struct CommaObject {
  int gamma;
  int hom_dim;
};

/// Objects (gamma, T) of the comma category under eta, represented by the
/// dimension of the T-space.
std::vector<CommaObject> comma_fiber(int eta, const BranchingTable& table);

/// Basis of Hom(a, b) = {T : b(g) T = T a(g)} over a common group.
std::vector<Matrix> intertwiners(const UnitaryRep& a, const UnitaryRep& b);

}  // namespace ssb
