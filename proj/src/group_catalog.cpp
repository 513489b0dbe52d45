#include "ssb/group_catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>

namespace ssb {

namespace {

using Perm = std::vector<int>;

Matrix permutation_matrix(const Perm& p) {
  const int k = static_cast<int>(p.size());
  Matrix m = Matrix::Zero(k, k);
  for (int x = 0; x < k; ++x) m(p[x], x) = 1.0;
  return m;
}

// Orthonormal basis of the sum-zero subspace of C^k.
Matrix sum_zero_basis(int k) {
  Matrix spanning(k, k - 1);
  spanning.setZero();
  for (int j = 0; j < k - 1; ++j) {
    spanning(j, j) = 1.0;
    spanning(k - 1, j) = -1.0;
  }
  return orthonormal_columns(spanning);
}

UnitaryRep from_matrices(const GroupPtr& g, const std::vector<Perm>& elements,
                         const std::function<Matrix(const Perm&)>& f, std::string label) {
  UnitaryRep rep{g, {}, std::move(label)};
  for (const auto& p : elements) rep.matrices.push_back(f(p));
  return rep;
}

UnitaryRep scalar_rep(const GroupPtr& g, const std::vector<Perm>& elements,
                      const std::function<cd(const Perm&)>& f, std::string label) {
  return from_matrices(g, elements, [&](const Perm& p) { return Matrix::Constant(1, 1, f(p)); },
                       std::move(label));
}

cd sign(const Perm& p) { return permutation_matrix(p).determinant().real() > 0 ? 1.0 : -1.0; }

UnitaryRep standard_rep(const GroupPtr& g, const std::vector<Perm>& elements, int k) {
  const Matrix q = sum_zero_basis(k);
  return from_matrices(g, elements,
                       [&](const Perm& p) { return Matrix(q.adjoint() * permutation_matrix(p) * q); },
                       "standard");
}

std::vector<int> members_of(const std::vector<Perm>& elements,
                            const std::function<bool(const Perm&)>& keep) {
  std::vector<int> out;
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (keep(elements[i])) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> generated(const GroupPtr& g, const std::vector<Perm>& elements,
                           const std::vector<Perm>& gens) {
  std::vector<int> idx;
  for (const auto& p : gens)
    idx.push_back(static_cast<int>(std::find(elements.begin(), elements.end(), p) - elements.begin()));
  return Subgroup::generated_by(g, idx).members();
}

void add_standard_subgroups(GroupSpec& c) {
  c.subgroups["1"] = {0};
  std::vector<int> all(c.group->order());
  for (int i = 0; i < c.group->order(); ++i) all[i] = i;
  c.subgroups[c.group->name()] = all;
}

GroupSpec cyclic(int n) {
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  GroupSpec c;
  c.group = FiniteGroup::from_table(n == 1 ? "trivial" : "Z" + std::to_string(n), table);
  for (int k = 0; k < n; ++k) {
    UnitaryRep rep{c.group, {}, "chi" + std::to_string(k)};
    for (int x = 0; x < n; ++x)
      rep.matrices.push_back(Matrix::Constant(1, 1, std::polar(1.0, 2.0 * std::numbers::pi * k * x / n)));
    c.irreps.push_back(std::move(rep));
  }
  add_standard_subgroups(c);
  for (int d = 2; d < n; ++d)
    if (n % d == 0) {
      std::vector<int> members;
      for (int x = 0; x < n; x += n / d) members.push_back(x);
      c.subgroups["Z" + std::to_string(d)] = members;
    }
  return c;
}

GroupSpec symmetric3() {
  std::vector<Perm> el;
  GroupSpec c;
  const Perm r{1, 2, 0}, s{0, 2, 1};
  c.group = FiniteGroup::from_permutations("S3", {r, s}, &el);
  c.irreps.push_back(trivial_rep(c.group));
  c.irreps.push_back(scalar_rep(c.group, el, sign, "sign"));
  c.irreps.push_back(standard_rep(c.group, el, 3));
  add_standard_subgroups(c);
  c.subgroups["Z3"] = generated(c.group, el, {r});
  c.subgroups["Z2"] = generated(c.group, el, {s});
  return c;
}

// Index (0..2) of the pair partition {01|23}, {02|13}, {03|12} that contains
// the pair {0, partner}.
int partition_of_partner(int partner) { return partner - 1; }

// Action of a permutation of 4 points on the three pair partitions.
Perm partition_action(const Perm& p) {
  Perm out(3);
  for (int part = 0; part < 3; ++part) {
    const int partner = part + 1;
    // partition {0,partner | rest}; its image contains the pair {p(0), p(partner)}
    const int a = p[0], b = p[partner];
    int zero_partner;
    if (a == 0) zero_partner = b;
    else if (b == 0) zero_partner = a;
    else {
      // the complementary pair contains 0; its other member is the point not in {0,a,b}
      zero_partner = 6 - a - b;
    }
    out[part] = partition_of_partner(zero_partner);
  }
  return out;
}

GroupSpec symmetric4() {
  std::vector<Perm> el;
  GroupSpec c;
  c.group = FiniteGroup::from_permutations("S4", {{1, 2, 3, 0}, {1, 0, 2, 3}}, &el);
  const Matrix q3 = sum_zero_basis(3);
  c.irreps.push_back(trivial_rep(c.group));
  c.irreps.push_back(scalar_rep(c.group, el, sign, "sign"));
  c.irreps.push_back(from_matrices(
      c.group, el,
      [&](const Perm& p) { return Matrix(q3.adjoint() * permutation_matrix(partition_action(p)) * q3); },
      "two"));
  UnitaryRep standard = standard_rep(c.group, el, 4);
  UnitaryRep twisted{c.group, {}, "standard_sign"};
  for (std::size_t i = 0; i < el.size(); ++i) twisted.matrices.push_back(sign(el[i]) * standard.matrices[i]);
  c.irreps.push_back(std::move(standard));
  c.irreps.push_back(std::move(twisted));
  add_standard_subgroups(c);
  c.subgroups["A4"] = members_of(el, [](const Perm& p) { return sign(p).real() > 0; });
  c.subgroups["V4"] = generated(c.group, el, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  c.subgroups["S3"] = members_of(el, [](const Perm& p) { return p[3] == 3; });
  c.subgroups["D4"] = generated(c.group, el, {{1, 2, 3, 0}, {0, 3, 2, 1}});
  return c;
}

GroupSpec alternating4() {
  std::vector<Perm> el;
  GroupSpec c;
  c.group = FiniteGroup::from_permutations("A4", {{1, 2, 0, 3}, {1, 0, 3, 2}}, &el);
  // A4 -> Z3 through the cyclic action on the pair partitions
  auto z3_power = [](const Perm& p) {
    const Perm q = partition_action(p);
    return q[0] == 0 ? 0 : (q[0] == 1 ? 1 : 2);
  };
  c.irreps.push_back(trivial_rep(c.group));
  for (int k : {1, 2})
    c.irreps.push_back(scalar_rep(
        c.group, el,
        [&](const Perm& p) { return std::polar(1.0, 2.0 * std::numbers::pi * k * z3_power(p) / 3.0); },
        "omega" + std::to_string(k)));
  c.irreps.push_back(standard_rep(c.group, el, 4));
  add_standard_subgroups(c);
  c.subgroups["V4"] = generated(c.group, el, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  c.subgroups["Z3"] = generated(c.group, el, {{1, 2, 0, 3}});
  return c;
}

GroupSpec dihedral4() {
  std::vector<Perm> el;
  GroupSpec c;
  const Perm r{1, 2, 3, 0}, s{0, 3, 2, 1};
  c.group = FiniteGroup::from_permutations("D4", {r, s}, &el);
  // vertex x of the square sits at angle x*pi/2; columns are images of e1, e2
  auto planar = [](const Perm& p) {
    auto vertex = [](int x) {
      Vector v(2);
      v << std::cos(x * std::numbers::pi / 2), std::sin(x * std::numbers::pi / 2);
      return v;
    };
    Matrix m(2, 2);
    m.col(0) = vertex(p[0]);
    m.col(1) = vertex(p[1]);
    return Matrix(m.real().cast<cd>());
  };
  auto det = [&](const Perm& p) { return planar(p).determinant().real() > 0 ? cd(1.0) : cd(-1.0); };
  c.irreps.push_back(trivial_rep(c.group));
  c.irreps.push_back(scalar_rep(c.group, el, det, "det"));
  c.irreps.push_back(scalar_rep(c.group, el, sign, "sign"));
  c.irreps.push_back(scalar_rep(c.group, el, [&](const Perm& p) { return det(p) * sign(p); }, "det_sign"));
  c.irreps.push_back(from_matrices(c.group, el, planar, "planar"));
  add_standard_subgroups(c);
  c.subgroups["Z4"] = generated(c.group, el, {r});
  c.subgroups["Z2"] = generated(c.group, el, {s});
  c.subgroups["V4"] = generated(c.group, el, {s, {2, 1, 0, 3}});
  return c;
}

GroupSpec quaternion() {
  // element 2u + b is the unit u in (1, i, j, k) with sign (-1)^b
  using Q = std::array<int, 4>;
  auto unit = [](int e) {
    Q q{0, 0, 0, 0};
    q[e / 2] = e % 2 ? -1 : 1;
    return q;
  };
  auto product = [](const Q& a, const Q& b) {
    return Q{a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
             a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
             a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
             a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
  };
  auto index = [](const Q& q) {
    for (int u = 0; u < 4; ++u)
      if (q[u] != 0) return 2 * u + (q[u] < 0 ? 1 : 0);
    return -1;
  };
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) table[a][b] = index(product(unit(a), unit(b)));
  GroupSpec c;
  c.group = FiniteGroup::from_table("Q8", table);
  const cd I(0.0, 1.0);
  Matrix basis[4] = {Matrix::Identity(2, 2), Matrix(2, 2), Matrix(2, 2), Matrix(2, 2)};
  basis[1] << I, 0, 0, -I;   // i sigma_z
  basis[2] << 0, 1, -1, 0;   // i sigma_y
  basis[3] << 0, I, I, 0;    // i sigma_x
  for (int si : {1, -1})
    for (int sj : {1, -1}) {
      UnitaryRep rep{c.group, {}, "chi" + std::string(si > 0 ? "+" : "-") + (sj > 0 ? "+" : "-")};
      for (int e = 0; e < 8; ++e) {
        const int u = e / 2;
        const int v = u == 0 ? 1 : (u == 1 ? si : (u == 2 ? sj : si * sj));
        rep.matrices.push_back(Matrix::Constant(1, 1, double(v)));
      }
      c.irreps.push_back(std::move(rep));
    }
  UnitaryRep two{c.group, {}, "spinor"};
  for (int e = 0; e < 8; ++e) {
    const Q q = unit(e);
    Matrix m = Matrix::Zero(2, 2);
    for (int u = 0; u < 4; ++u) m += double(q[u]) * basis[u];
    two.matrices.push_back(m);
  }
  c.irreps.push_back(std::move(two));
  add_standard_subgroups(c);
  c.subgroups["Z2"] = {0, 1};
  c.subgroups["Z4"] = {0, 1, 2, 3};
  return c;
}

}  // namespace

GroupSpec catalog_group(const std::string& name) {
  if (name == "trivial") return cyclic(1);
  if (name == "S3") return symmetric3();
  if (name == "S4") return symmetric4();
  if (name == "A4") return alternating4();
  if (name == "D4") return dihedral4();
  if (name == "Q8") return quaternion();
  if (name.size() > 1 && name[0] == 'Z' &&
      std::all_of(name.begin() + 1, name.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    const int n = std::stoi(name.substr(1));
    if (n >= 1 && n <= 64) return cyclic(n);
  }
  throw InputError("unknown catalog group '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {"trivial", "Z2", "Z3", "Z4", "S3", "S4", "D4", "Q8", "A4"};
}

std::vector<CatalogPair> catalog_pairs() {
  return {{"S3", "Z3"}, {"Z4", "Z2"}, {"S3", "Z2"}, {"D4", "Z4"}, {"A4", "V4"}, {"S4", "A4"}};
}

}  // namespace ssb
