#include "ssb/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace ssb {

std::shared_ptr<const FiniteGroup> FiniteGroup::from_table(std::string name,
                                                          std::vector<std::vector<int>> table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw GroupLoadError("empty multiplication table");
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n)
      throw GroupLoadError("row " + std::to_string(a) + " has " + std::to_string(table[a].size()) +
                               " entries, expected " + std::to_string(n),
                           {a});
    for (int b = 0; b < n; ++b)
      if (table[a][b] < 0 || table[a][b] >= n)
        throw GroupLoadError("product " + std::to_string(a) + "*" + std::to_string(b) +
                                 " is out of range",
                             {a, b});
  }
  for (int a = 0; a < n; ++a)
    if (table[0][a] != a || table[a][0] != a)
      throw GroupLoadError("element 0 is not a two-sided identity at " + std::to_string(a), {a});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw GroupLoadError("associativity fails for (a,b,c) = (" + std::to_string(a) + "," +
                                   std::to_string(b) + "," + std::to_string(c) + ")",
                               {a, b, c});

  std::vector<int> inverse(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table[a][b] == 0 && table[b][a] == 0) {
        inverse[a] = b;
        break;
      }
    if (inverse[a] < 0)
      throw GroupLoadError("element " + std::to_string(a) + " has no inverse", {a});
  }

  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->name_ = std::move(name);
  g->table_ = std::move(table);
  g->inverse_ = std::move(inverse);
  g->class_of_.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (g->class_of_[x] >= 0) continue;
    const int id = static_cast<int>(g->classes_.size());
    std::set<int> cls;
    for (int y = 0; y < n; ++y) cls.insert(g->conj(y, x));
    for (int c : cls) g->class_of_[c] = id;
    g->classes_.emplace_back(cls.begin(), cls.end());
  }
  return g;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::from_permutations(
    std::string name, const std::vector<std::vector<int>>& generators,
    std::vector<std::vector<int>>* elements_out) {
  if (generators.empty()) return from_table(std::move(name), {{0}});
  const std::size_t k = generators.front().size();
  for (const auto& p : generators) {
    std::vector<int> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> iota(k);
    std::iota(iota.begin(), iota.end(), 0);
    if (p.size() != k || sorted != iota) throw GroupLoadError("generator is not a permutation");
  }
  auto compose = [k](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(k);
    for (std::size_t x = 0; x < k; ++x) r[x] = p[q[x]];
    return r;
  };
  std::vector<int> identity(k);
  std::iota(identity.begin(), identity.end(), 0);
  std::vector<std::vector<int>> elements{identity};
  std::map<std::vector<int>, int> index{{identity, 0}};
  std::queue<int> todo;
  todo.push(0);
  while (!todo.empty()) {
    const int cur = todo.front();
    todo.pop();
    for (const auto& gen : generators) {
      auto next = compose(elements[cur], gen);
      if (index.emplace(next, static_cast<int>(elements.size())).second) {
        elements.push_back(next);
        todo.push(static_cast<int>(elements.size()) - 1);
      }
    }
  }
  const int n = static_cast<int>(elements.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = index.at(compose(elements[a], elements[b]));
  if (elements_out) *elements_out = elements;
  return from_table(std::move(name), std::move(table));
}

int FiniteGroup::element_order(int g) const {
  int k = 1;
  for (int x = g; x != 0; x = mul(x, g)) ++k;
  return k;
}

Subgroup::Subgroup(GroupPtr parent, std::vector<int> members, std::string label)
    : parent_(std::move(parent)), members_(std::move(members)), label_(std::move(label)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  const int n = parent_->order();
  local_.assign(n, -1);
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 0 || members_[i] >= n)
      throw InputError("subgroup '" + label_ + "' names element " + std::to_string(members_[i]) +
                       " outside the group");
    local_[members_[i]] = static_cast<int>(i);
  }
  if (members_.empty() || members_[0] != 0)
    throw InputError("subgroup '" + label_ + "' does not contain the identity");
  const int m = order();
  if (n % m != 0)
    throw InputError("subgroup '" + label_ + "' has order " + std::to_string(m) +
                     " not dividing " + std::to_string(n));
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const int p = parent_->mul(members_[a], members_[b]);
      if (local_[p] < 0)
        throw InputError("subgroup '" + label_ + "' is not closed: " +
                         std::to_string(members_[a]) + "*" + std::to_string(members_[b]) + " = " +
                         std::to_string(p));
      table[a][b] = local_[p];
    }
  group_ = FiniteGroup::from_table(label_.empty() ? parent_->name() + "-sub" : label_,
                                   std::move(table));
}

Subgroup Subgroup::whole(GroupPtr parent) {
  std::vector<int> all(parent->order());
  std::iota(all.begin(), all.end(), 0);
  auto label = parent->name();
  return Subgroup(std::move(parent), std::move(all), label);
}

Subgroup Subgroup::trivial(GroupPtr parent) { return Subgroup(std::move(parent), {0}, "1"); }

Subgroup Subgroup::generated_by(GroupPtr parent, const std::vector<int>& generators,
                                std::string label) {
  std::set<int> members{0};
  std::queue<int> todo;
  todo.push(0);
  while (!todo.empty()) {
    const int x = todo.front();
    todo.pop();
    for (int g : generators) {
      const int y = parent->mul(x, g);
      if (members.insert(y).second) todo.push(y);
    }
  }
  return Subgroup(std::move(parent), {members.begin(), members.end()}, std::move(label));
}

bool Subgroup::is_normal() const {
  for (int x = 0; x < parent_->order(); ++x)
    for (int h : members_)
      if (!contains(parent_->conj(x, h))) return false;
  return true;
}

int CosetSpace::decompose(int g, int& h) const {
  const int c = coset_of[g];
  const int r = representatives[c];
  // right coset: g = h r  => h = g r^-1 ; left coset: g = r h => h = r^-1 g
  h = side == CosetSide::Right ? group->mul(g, group->inv(r)) : group->mul(group->inv(r), g);
  return c;
}

CosetSpace coset_space(const Subgroup& h, CosetSide side) {
  const auto& g = h.parent();
  const int n = g->order();
  CosetSpace cs;
  cs.group = g;
  cs.subgroup = h.members();
  cs.side = side;
  cs.coset_of.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (cs.coset_of[x] >= 0) continue;
    const int id = cs.size();
    cs.representatives.push_back(x);
    for (int m : h.members()) {
      const int y = side == CosetSide::Right ? g->mul(m, x) : g->mul(x, m);
      cs.coset_of[y] = id;
    }
  }
  cs.translation_action.assign(n, std::vector<int>(cs.size()));
  for (int x = 0; x < n; ++x)
    for (int c = 0; c < cs.size(); ++c) {
      const int r = cs.representatives[c];
      cs.translation_action[x][c] =
          cs.coset_of[side == CosetSide::Right ? g->mul(r, x) : g->mul(x, r)];
    }
  return cs;
}

NormalizerQuotient normalizer_quotient(const Subgroup& h) {
  const auto& g = h.parent();
  std::vector<int> normalizer;
  for (int x = 0; x < g->order(); ++x) {
    bool keeps = true;
    for (int m : h.members())
      if (!h.contains(g->conj(x, m))) {
        keeps = false;
        break;
      }
    if (keeps) normalizer.push_back(x);
  }
  Subgroup n(g, normalizer, "N(" + h.label() + ")");
  return {n, n.order() / h.order()};
}

}  // namespace ssb
