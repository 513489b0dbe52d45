#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ssb/group_catalog.hpp"
#include "ssb/star_algebra.hpp"

using namespace ssb;

namespace {

Matrix unit(int n, int i, int j) {
  Matrix m = Matrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

}  // namespace

TEST(StarAlgebra, GeneratedByMatrixUnitsIsFull) {
  const MatrixStarAlgebra a = MatrixStarAlgebra::generated_by({unit(3, 0, 1), unit(3, 1, 2)});
  EXPECT_EQ(a.dim(), 9);
  EXPECT_TRUE(a.closure_certified());
}

TEST(StarAlgebra, SingleSelfAdjointGeneratorGivesDiagonalAlgebra) {
  Rng rng(5);
  const Matrix h = rng.random_hermitian(5);
  const MatrixStarAlgebra a = MatrixStarAlgebra::generated_by({h});
  EXPECT_EQ(a.dim(), 5);  // generic spectrum: 5 spectral projections
  EXPECT_TRUE(a.contains(h * h * h));
  EXPECT_FALSE(a.contains(rng.random_hermitian(5)));
  EXPECT_FALSE(a.unitized());
}

TEST(StarAlgebra, NonUnitalGeneratorsAreUnitized) {
  const MatrixStarAlgebra a = MatrixStarAlgebra::generated_by({unit(2, 0, 0)});
  EXPECT_TRUE(a.unitized());
  EXPECT_EQ(a.dim(), 2);
  EXPECT_TRUE(a.contains(Matrix::Identity(2, 2)));
}

TEST(StarAlgebra, SameSpanDetectsDifferences) {
  const MatrixStarAlgebra diag = MatrixStarAlgebra::generated_by({unit(2, 0, 0)});
  const MatrixStarAlgebra again = MatrixStarAlgebra::from_span({unit(2, 0, 0), unit(2, 1, 1)}, 2);
  EXPECT_TRUE(diag.same_span(again));
  EXPECT_FALSE(diag.same_span(MatrixStarAlgebra::full(2)));
  // a span that is not closed under products fails its certificate
  const MatrixStarAlgebra open = MatrixStarAlgebra::from_span({Matrix::Identity(2, 2), unit(2, 0, 1) + unit(2, 1, 0), unit(2, 0, 0)}, 2);
  EXPECT_FALSE(open.closure_certified());
}

TEST(Commutant, OfGroupImageMatchesCharacterFormula) {
  for (const std::string name : {"S3", "D4", "Q8", "A4"}) {
    SCOPED_TRACE(name);
    const GroupSpec spec = catalog_group(name);
    const RepresentationData data = spec.representations();
    const UnitaryRep v = direct_sum({data.irreps.back(), data.irreps.back(), data.irreps[0]}, "v");
    const MatrixStarAlgebra image = MatrixStarAlgebra::generated_by(v.matrices);
    const MatrixStarAlgebra comm = commutant(image);
    EXPECT_EQ(comm.dim(), oracle::fixed_point_dim(v.matrices, oracle::all_elements(spec.group->order())));
    Rng rng(3);
    const Matrix x = comm.random_element(rng);
    for (const auto& u : v.matrices) EXPECT_LT(max_abs(u * x - x * u), 1e-9);
    // double commutant
    EXPECT_TRUE(commutant(comm).same_span(image));
  }
}

TEST(Centre, DimensionCountsDistinctConstituents) {
  const GroupSpec spec = catalog_group("S4");
  const RepresentationData data = spec.representations();
  std::vector<oracle::Rep> irreps;
  for (const auto& r : data.irreps) irreps.push_back(r.matrices);
  const UnitaryRep v = direct_sum({data.irreps[2], data.irreps[3], data.irreps[3], data.irreps[0]}, "v");
  const MatrixStarAlgebra comm = commutant(MatrixStarAlgebra::generated_by(v.matrices));
  const Centre z = centre(comm);
  EXPECT_EQ(static_cast<int>(z.algebra.dim()), oracle::distinct_constituents(v.matrices, irreps, 24));
  ASSERT_EQ(z.projections.size(), static_cast<std::size_t>(z.algebra.dim()));
  Matrix sum = Matrix::Zero(v.dim(), v.dim());
  for (std::size_t i = 0; i < z.projections.size(); ++i) {
    const Matrix& p = z.projections[i];
    EXPECT_LT(max_abs(p * p - p), 1e-9);
    EXPECT_LT(max_abs(p - p.adjoint()), 1e-9);
    for (std::size_t j = 0; j < i; ++j) EXPECT_LT(max_abs(p * z.projections[j]), 1e-9);
    for (const Matrix& b : comm.basis()) EXPECT_LT(max_abs(p * b - b * p), 1e-9);
    sum += p;
  }
  EXPECT_LT(max_abs(sum - Matrix::Identity(v.dim(), v.dim())), 1e-9);
}

TEST(FixedPoints, DimensionsMatchCharacterFormulaOnAllPairs) {
  for (const auto& pair : catalog_pairs()) {
    SCOPED_TRACE(pair.group + "/" + pair.subgroup);
    const GroupSpec spec = catalog_group(pair.group);
    const Subgroup h = spec.subgroup(pair.subgroup);
    const GroupAction act{regular_rep(spec.group)};
    const int n = spec.group->order();
    const MatrixStarAlgebra full = MatrixStarAlgebra::full(n);
    const MatrixStarAlgebra fh = fixed_point_algebra(full, act, h);
    EXPECT_EQ(fh.dim(), oracle::fixed_point_dim(act.rep.matrices, h.members()));
    Rng rng(11);
    const Matrix x = rng.random_matrix(n, n);
    const Matrix ex = conditional_expectation(x, act, h);
    EXPECT_TRUE(fh.contains(ex));
    EXPECT_LT(max_abs(conditional_expectation(ex, act, h) - ex), 1e-12);
  }
}

TEST(FixedPoints, NonRegularRepresentation) {
  const GroupSpec spec = catalog_group("S3");
  const RepresentationData data = spec.representations();
  const GroupAction act{direct_sum({data.irreps[2], data.irreps[1]}, "std+sgn")};
  const MatrixStarAlgebra fp = fixed_point_algebra(MatrixStarAlgebra::full(3), act, Subgroup::whole(spec.group));
  EXPECT_EQ(fp.dim(), 2);
}

TEST(Isotypic, ProjectionsResolveTheIdentity) {
  const GroupSpec spec = catalog_group("D4");
  const RepresentationData data = spec.representations();
  const UnitaryRep reg = regular_rep(spec.group);
  const auto iso = isotypic_decomposition(reg, data.table);
  Matrix sum = Matrix::Zero(8, 8);
  for (const auto& c : iso) {
    EXPECT_EQ(c.multiplicity, data.table.dims[c.irrep]);
    EXPECT_NEAR(c.projection.trace().real(), double(c.multiplicity * data.table.dims[c.irrep]), 1e-9);
    sum += c.projection;
  }
  EXPECT_LT(max_abs(sum - Matrix::Identity(8, 8)), 1e-12);
  EXPECT_THROW(isotypic_decomposition(regular_rep(catalog_group("S3").group), data.table), InputError);
}

TEST(States, ValidationAndCentralDecomposition) {
  EXPECT_THROW(StateFunctional{Matrix::Identity(2, 2)}, InputError);         // trace 2
  EXPECT_THROW(StateFunctional{unit(2, 0, 1)}, InputError);                   // not self-adjoint
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(StateFunctional{neg}, InputError);

  // algebra M_1 (+) M_2 inside M_3
  const MatrixStarAlgebra a = MatrixStarAlgebra::from_span(
      {unit(3, 0, 0), unit(3, 1, 1), unit(3, 1, 2), unit(3, 2, 1), unit(3, 2, 2)}, 3);
  Rng rng(8);
  Matrix x = rng.random_matrix(3, 3);
  Matrix rho = x * x.adjoint();
  rho /= rho.trace().real();
  const StateFunctional omega(rho);
  const CentralDecomposition d = central_decompose_state(omega, a);
  ASSERT_EQ(d.weights.size(), 2u);
  EXPECT_NEAR(d.weights[0] + d.weights[1], 1.0, 1e-12);
  EXPECT_LT(d.reconstruction_residual, 1e-10);
  // reconstruction on the algebra
  for (const Matrix& b : a.basis()) {
    cd mixed = 0.0;
    for (std::size_t i = 0; i < d.weights.size(); ++i)
      if (d.components[i]) mixed += d.weights[i] * (*d.components[i])(b);
    EXPECT_LT(std::abs(mixed - omega(b)), 1e-10);
  }
}

TEST(Galois, RegularRepresentationRecoversSubgroupAndNormalizer) {
  for (const auto& pair : catalog_pairs()) {
    SCOPED_TRACE(pair.group + "/" + pair.subgroup);
    const GroupSpec spec = catalog_group(pair.group);
    const Subgroup h = spec.subgroup(pair.subgroup);
    const GroupAction act{regular_rep(spec.group)};
    const MatrixStarAlgebra ad = fixed_point_algebra(MatrixStarAlgebra::full(spec.group->order()), act, h);
    const GaloisResult gal = galois_stabilizer(act, ad);
    EXPECT_EQ(gal.fixing.members(), h.members());
    EXPECT_EQ(gal.stabilizing.members(), normalizer_quotient(h).normalizer.members());
  }
}

TEST(Compress, RestrictsToSubspace) {
  const MatrixStarAlgebra full = MatrixStarAlgebra::full(4);
  Matrix iso = Matrix::Zero(4, 2);
  iso(1, 0) = 1.0;
  iso(3, 1) = 1.0;
  EXPECT_EQ(compress(full, iso).dim(), 4);
}
