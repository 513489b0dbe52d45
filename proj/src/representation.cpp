#include "ssb/representation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ssb {

std::vector<cd> UnitaryRep::element_characters() const {
  std::vector<cd> out(matrices.size());
  for (std::size_t g = 0; g < matrices.size(); ++g) out[g] = matrices[g].trace();
  return out;
}

std::vector<cd> UnitaryRep::class_characters() const {
  std::vector<cd> out;
  for (const auto& cls : group->classes()) out.push_back(character(cls.front()));
  return out;
}

double UnitaryRep::homomorphism_residual() const {
  double worst = 0.0;
  const int n = group->order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      worst = std::max(worst, max_abs(matrices[a] * matrices[b] - matrices[group->mul(a, b)]));
  return worst;
}

double UnitaryRep::unitarity_residual() const {
  double worst = 0.0;
  for (const auto& m : matrices)
    worst = std::max(worst, max_abs(m * m.adjoint() - Matrix::Identity(m.rows(), m.cols())));
  return worst;
}

void UnitaryRep::validate(double tolerance) const {
  if (static_cast<int>(matrices.size()) != group->order())
    throw InputError("representation '" + label + "' has " + std::to_string(matrices.size()) +
                     " matrices for a group of order " + std::to_string(group->order()));
  for (const auto& m : matrices)
    if (m.rows() != dim() || m.cols() != dim())
      throw InputError("representation '" + label + "' has inconsistent matrix sizes");
  if (double r = homomorphism_residual(); r > tolerance)
    throw ConsistencyError("representation '" + label + "' is not a homomorphism", r);
  if (double r = unitarity_residual(); r > tolerance)
    throw ConsistencyError("representation '" + label + "' is not unitary", r);
  for (const auto& cls : group->classes())
    for (int g : cls)
      if (double r = std::abs(character(g) - character(cls.front())); r > tolerance)
        throw ConsistencyError("character of '" + label + "' is not a class function", r);
}

std::vector<cd> CharacterTable::element_values(int row) const {
  std::vector<cd> out(group->order());
  for (int g = 0; g < group->order(); ++g) out[g] = value(row, g);
  return out;
}

namespace {

long long rounded(double x) { return std::llround(x * 1e6); }

// Canonical ordering key: dimension, then (-re, -im) per class. The trivial
// character is the smallest key among dimension-one rows.
std::vector<long long> row_key(const std::vector<cd>& row) {
  std::vector<long long> key{rounded(row.front().real())};
  for (const auto& v : row) {
    key.push_back(-rounded(v.real()));
    key.push_back(-rounded(v.imag()));
  }
  return key;
}

std::optional<CharacterTable> try_character_table(const GroupPtr& g, Rng& rng) {
  const int n = g->order();
  const int r = g->num_classes();
  std::vector<int> rep_class(n, -1);
  for (int k = 0; k < r; ++k) rep_class[g->classes()[k].front()] = k;

  // c[i](j,k): number of ways (x in C_i, y in C_j) with x*y = rep of C_k
  std::vector<Eigen::MatrixXd> c(r, Eigen::MatrixXd::Zero(r, r));
  for (int i = 0; i < r; ++i)
    for (int x : g->classes()[i])
      for (int y = 0; y < n; ++y) {
        const int k = rep_class[g->mul(x, y)];
        if (k >= 0) c[i](g->class_of(y), k) += 1.0;
      }

  Eigen::MatrixXd combo = Eigen::MatrixXd::Zero(r, r);
  for (int i = 0; i < r; ++i) combo += (2.0 * rng.uniform() - 1.0) * c[i];
  Eigen::ComplexEigenSolver<Matrix> es(combo.cast<cd>());
  if (es.info() != Eigen::Success) return std::nullopt;

  CharacterTable table;
  table.group = g;
  std::vector<std::vector<cd>> rows;
  for (int col = 0; col < r; ++col) {
    Vector w = es.eigenvectors().col(col);
    if (std::abs(w(0)) < 1e-8) return std::nullopt;
    w /= w(0);
    // w must be a common eigenvector: c_i w = w_i w
    for (int i = 0; i < r; ++i)
      if ((c[i].cast<cd>() * w - w(i) * w).norm() > 1e-7 * (1.0 + w.norm()) * n) return std::nullopt;
    double denom = 0.0;
    for (int k = 0; k < r; ++k) denom += std::norm(w(k)) / g->classes()[k].size();
    const double d_real = std::sqrt(n / denom);
    const int d = static_cast<int>(std::lround(d_real));
    if (std::abs(d_real - d) > tol::rounding) return std::nullopt;
    std::vector<cd> row(r);
    for (int k = 0; k < r; ++k) row[k] = static_cast<double>(d) * w(k) / double(g->classes()[k].size());
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return row_key(a) < row_key(b); });
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (row_key(rows[i]) == row_key(rows[i - 1])) return std::nullopt;
  for (const auto& row : rows) {
    table.dims.push_back(static_cast<int>(std::lround(row.front().real())));
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace

CharacterTable character_table(const GroupPtr& g, std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt)
    if (auto t = try_character_table(g, rng)) {
      // orthonormality is the acceptance test for the eigenvector split
      double worst = 0.0;
      for (int i = 0; i < t->size(); ++i)
        for (int j = 0; j < t->size(); ++j) {
          const cd ip = character_inner(t->element_values(i), t->element_values(j));
          worst = std::max(worst, std::abs(ip - cd(i == j ? 1.0 : 0.0)));
        }
      if (worst < 1e-9) return *t;
    }
  throw ConsistencyError("character table eigenvectors could not be separated for " + g->name(),
                         1.0);
}

UnitaryRep regular_rep(const GroupPtr& g) {
  const int n = g->order();
  UnitaryRep rep{g, {}, "regular"};
  for (int x = 0; x < n; ++x) {
    Matrix m = Matrix::Zero(n, n);
    for (int y = 0; y < n; ++y) m(g->mul(x, y), y) = 1.0;
    rep.matrices.push_back(std::move(m));
  }
  return rep;
}

UnitaryRep trivial_rep(const GroupPtr& g, int dim) {
  return {g, std::vector<Matrix>(g->order(), Matrix::Identity(dim, dim)), "trivial"};
}

UnitaryRep direct_sum(const std::vector<UnitaryRep>& reps, std::string label) {
  if (reps.empty()) throw InputError("direct sum of no representations");
  UnitaryRep out{reps.front().group, {}, std::move(label)};
  for (int g = 0; g < out.group->order(); ++g) {
    std::vector<Matrix> blocks;
    for (const auto& r : reps) blocks.push_back(r.matrices[g]);
    out.matrices.push_back(ssb::direct_sum(blocks));
  }
  return out;
}

std::vector<UnitaryRep> irreps(const GroupPtr& g, const CharacterTable& table, std::uint64_t seed) {
  const int n = g->order();
  const UnitaryRep reg = regular_rep(g);
  Rng rng(seed);
  std::vector<UnitaryRep> out;
  for (int i = 0; i < table.size(); ++i) {
    const int d = table.dims[i];
    UnitaryRep rep{g, {}, "irrep" + std::to_string(i)};
    if (d == 1) {
      for (int x = 0; x < n; ++x) rep.matrices.push_back(Matrix::Constant(1, 1, table.value(i, x)));
      out.push_back(std::move(rep));
      continue;
    }
    Matrix projector = Matrix::Zero(n, n);
    for (int x = 0; x < n; ++x) projector += std::conj(table.value(i, x)) * reg.matrices[x];
    projector *= double(d) / n;
    Eigen::SelfAdjointEigenSolver<Matrix> pe(hermitian_part(projector));
    const Matrix range = pe.eigenvectors().rightCols(d * d);

    bool done = false;
    for (int attempt = 0; attempt < 8 && !done; ++attempt) {
      // random element of the commutant of the left regular representation
      const Matrix x = rng.random_hermitian(n);
      Matrix xbar = Matrix::Zero(n, n);
      for (int y = 0; y < n; ++y) xbar += reg.matrices[y] * x * reg.matrices[y].adjoint();
      xbar /= double(n);
      Eigen::SelfAdjointEigenSolver<Matrix> ye(hermitian_part(range.adjoint() * xbar * range));
      const auto clusters = cluster_sorted(ye.eigenvalues(), 1e-7);
      if (static_cast<int>(clusters.size()) != d) continue;
      if (std::any_of(clusters.begin(), clusters.end(),
                      [d](auto c) { return c.second - c.first != d; }))
        continue;
      const Matrix q = range * ye.eigenvectors().leftCols(d);
      rep.matrices.clear();
      for (int y = 0; y < n; ++y) rep.matrices.push_back(q.adjoint() * reg.matrices[y] * q);
      done = rep.homomorphism_residual() < tol::rep && rep.unitarity_residual() < tol::rep;
    }
    if (!done)
      throw ConsistencyError("block splitting of the regular representation failed for irrep " +
                                 std::to_string(i) + " of " + g->name(),
                             1.0);
    out.push_back(std::move(rep));
  }
  return out;
}

RepresentationData RepresentationData::compute(const GroupPtr& g, std::uint64_t seed,
                                               const std::vector<UnitaryRep>* supplied) {
  RepresentationData data{g, character_table(g, seed), {}};
  if (!supplied) {
    data.irreps = ssb::irreps(g, data.table, seed);
    return data;
  }
  if (static_cast<int>(supplied->size()) != data.table.size())
    throw InputError("group " + g->name() + " has " + std::to_string(data.table.size()) +
                     " irreps but " + std::to_string(supplied->size()) + " were supplied");
  data.irreps.resize(data.table.size());
  std::vector<bool> used(data.table.size(), false);
  for (const auto& rep : *supplied) {
    rep.validate();
    const auto chars = rep.class_characters();
    int match = -1;
    for (int i = 0; i < data.table.size() && match < 0; ++i) {
      double diff = 0.0;
      for (int k = 0; k < g->num_classes(); ++k)
        diff = std::max(diff, std::abs(chars[k] - data.table.rows[i][k]));
      if (diff < tol::rounding && !used[i]) match = i;
    }
    if (match < 0)
      throw InputError("supplied irrep '" + rep.label + "' matches no unused character of " +
                       g->name());
    used[match] = true;
    data.irreps[match] = rep;
  }
  return data;
}

cd character_inner(const std::vector<cd>& a, const std::vector<cd>& b) {
  cd sum = 0.0;
  for (std::size_t g = 0; g < a.size(); ++g) sum += a[g] * std::conj(b[g]);
  return sum / double(a.size());
}

int round_multiplicity(cd value) {
  const long r = std::lround(value.real());
  const double residual = std::abs(value - cd(double(r), 0.0));
  if (residual > tol::rounding || r < 0)
    throw ConsistencyError("multiplicity is not a non-negative integer", residual);
  return static_cast<int>(r);
}

std::vector<int> decompose(const UnitaryRep& rep, const CharacterTable& table) {
  const auto chars = rep.element_characters();
  std::vector<int> out;
  for (int i = 0; i < table.size(); ++i)
    out.push_back(round_multiplicity(character_inner(chars, table.element_values(i))));
  return out;
}

Restriction restrict(const UnitaryRep& gamma, const Subgroup& h, const CharacterTable& table_h) {
  if (gamma.group != h.parent()) throw InputError("restriction to a subgroup of another group");
  UnitaryRep rep{h.as_group(), {}, gamma.label + "|" + h.label()};
  for (int m : h.members()) rep.matrices.push_back(gamma.matrices[m]);
  auto mult = decompose(rep, table_h);
  return {std::move(rep), std::move(mult)};
}

UnitaryRep induce(const UnitaryRep& eta, const Subgroup& h) {
  const auto& g = h.parent();
  const CosetSpace cosets = coset_space(h, CosetSide::Left);
  const int m = cosets.size();
  const int d = eta.dim();
  UnitaryRep out{g, {}, "Ind(" + eta.label + ")"};
  for (int x = 0; x < g->order(); ++x) {
    Matrix mat = Matrix::Zero(m * d, m * d);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const int y = g->mul(g->mul(g->inv(cosets.representatives[i]), x), cosets.representatives[j]);
        if (h.contains(y)) mat.block(i * d, j * d, d, d) = eta.matrices[h.local_index(y)];
      }
    out.matrices.push_back(std::move(mat));
  }
  return out;
}

int branching_multiplicity(const Subgroup& h, const std::vector<cd>& eta_chars,
                           const std::vector<cd>& gamma_chars) {
  std::vector<cd> restricted;
  for (int m : h.members()) restricted.push_back(gamma_chars[m]);
  return round_multiplicity(character_inner(restricted, eta_chars));
}

BranchingTable branching_table(const Subgroup& h, const CharacterTable& table_h,
                               const CharacterTable& table_g) {
  BranchingTable bt;
  for (int e = 0; e < table_h.size(); ++e) {
    std::vector<int> row;
    for (int c = 0; c < table_g.size(); ++c)
      row.push_back(branching_multiplicity(h, table_h.element_values(e), table_g.element_values(c)));
    bt.multiplicities.push_back(std::move(row));
  }
  return bt;
}

FrobeniusPair frobenius_check(const Subgroup& h, const UnitaryRep& eta, const UnitaryRep& gamma) {
  const int via_restriction =
      branching_multiplicity(h, eta.element_characters(), gamma.element_characters());
  const UnitaryRep ind = induce(eta, h);
  const int via_induction =
      round_multiplicity(character_inner(ind.element_characters(), gamma.element_characters()));
  return {via_restriction, via_induction};
}

bool extension_preferred(const std::vector<int>& a, const std::vector<int>& b) {
  auto expand = [](const std::vector<int>& v) {
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.insert(out.end(), v[i], static_cast<int>(i));
    return out;
  };
  return expand(a) < expand(b);
}

MinimalExtension extend_rep_minimal(const UnitaryRep& eta, const Subgroup& h,
                                    const RepresentationData& g_data,
                                    const RepresentationData& h_data) {
  const std::vector<int> need = decompose(eta, h_data.table);
  const BranchingTable bt = branching_table(h, h_data.table, g_data.table);
  const int rg = g_data.size();
  const int rh = h_data.size();

  // feasible witness: cover each eta_k separately by its cheapest gamma
  int bound = 0;
  for (int k = 0; k < rh; ++k) {
    if (need[k] == 0) continue;
    int best = -1;
    for (int c = 0; c < rg; ++c) {
      const int m = bt.multiplicities[k][c];
      if (m == 0) continue;
      const int cost = g_data.table.dims[c] * ((need[k] + m - 1) / m);
      if (best < 0 || cost < best) best = cost;
    }
    bound += best;
  }

  std::vector<int> best;
  int best_dim = bound + 1;
  std::vector<int> current(rg, 0);
  std::function<void(int, int)> search = [&](int c, int dim) {
    if (dim > best_dim) return;
    if (c == rg) {
      for (int k = 0; k < rh; ++k) {
        int have = 0;
        for (int x = 0; x < rg; ++x) have += current[x] * bt.multiplicities[k][x];
        if (have < need[k]) return;
      }
      if (dim < best_dim || (dim == best_dim && extension_preferred(current, best))) {
        best_dim = dim;
        best = current;
      }
      return;
    }
    for (int n = 0; dim + n * g_data.table.dims[c] <= best_dim; ++n) {
      current[c] = n;
      search(c + 1, dim + n * g_data.table.dims[c]);
    }
    current[c] = 0;
  };
  search(0, 0);

  MinimalExtension out;
  out.multiplicities = best;
  std::vector<UnitaryRep> parts;
  for (int c = 0; c < rg; ++c)
    for (int n = 0; n < best[c]; ++n) parts.push_back(g_data.irreps[c]);
  out.gamma = parts.empty() ? trivial_rep(g_data.group, 0) : direct_sum(parts, "extension");
  out.complement.assign(rh, 0);
  for (int k = 0; k < rh; ++k) {
    int have = 0;
    for (int c = 0; c < rg; ++c) have += best[c] * bt.multiplicities[k][c];
    out.complement[k] = have - need[k];
    out.complement_dim += out.complement[k] * h_data.table.dims[k];
  }
  return out;
}

std::vector<CommaObject> comma_fiber(int eta, const BranchingTable& table) {
  std::vector<CommaObject> out;
  const auto& row = table.multiplicities.at(eta);
  for (std::size_t c = 0; c < row.size(); ++c)
    if (row[c] > 0) out.push_back({static_cast<int>(c), row[c]});
  return out;
}

std::vector<Matrix> intertwiners(const UnitaryRep& a, const UnitaryRep& b) {
  if (a.group != b.group) throw InputError("intertwiners between representations of different groups");
  const int da = a.dim();
  const int db = b.dim();
  const int n = a.group->order();
  // vec(B T - T A) = (I (x) B - A^T (x) I) vec(T)
  Matrix system(static_cast<Eigen::Index>(n) * da * db, static_cast<Eigen::Index>(da) * db);
  for (int g = 0; g < n; ++g)
    system.middleRows(static_cast<Eigen::Index>(g) * da * db, da * db) =
        kron(Matrix::Identity(da, da), b.matrices[g]) -
        kron(a.matrices[g].transpose(), Matrix::Identity(db, db));
  const Matrix kernel = null_space(system);
  std::vector<Matrix> out;
  for (Eigen::Index j = 0; j < kernel.cols(); ++j)
    out.push_back(Eigen::Map<const Matrix>(kernel.col(j).data(), db, da));
  return out;
}

}  // namespace ssb
