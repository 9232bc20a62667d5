#include "hurwitz/perm.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace hurwitz {

namespace {

void check_degree(int degree) {
  if (degree < 1 || degree > kMaxDegree) {
    throw InputError("permutation degree " + std::to_string(degree) +
                     " outside [1, " + std::to_string(kMaxDegree) + "]");
  }
}

}  // namespace

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_) {
    if (p <= 0) throw InputError("partition parts must be positive");
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  sum_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

bool Partition::contains_submultiset(std::span<const int> sub) const {
  std::map<int, int> available;
  for (int p : parts_) ++available[p];
  for (int s : sub) {
    if (--available[s] < 0) return false;
  }
  return true;
}

std::string Partition::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts_[i]);
  }
  return out + ")";
}

bool Cycle::contains(int point) const {
  return std::find(support.begin(), support.end(), point) != support.end();
}

std::string Cycle::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(support[i] + 1);
  }
  return out + ")";
}

Perm Perm::identity(int degree) {
  check_degree(degree);
  Perm p;
  p.degree_ = static_cast<std::uint8_t>(degree);
  for (int i = 0; i < degree; ++i) p.images_[i] = static_cast<std::uint8_t>(i);
  return p;
}

Perm Perm::from_images(std::span<const int> images_one_based) {
  const int degree = static_cast<int>(images_one_based.size());
  check_degree(degree);
  Perm p;
  p.degree_ = static_cast<std::uint8_t>(degree);
  std::vector<bool> seen(degree, false);
  for (int i = 0; i < degree; ++i) {
    const int image = images_one_based[i] - 1;
    if (image < 0 || image >= degree || seen[image]) {
      throw InputError("images do not form a bijection of {1.." +
                       std::to_string(degree) + "}");
    }
    seen[image] = true;
    p.images_[i] = static_cast<std::uint8_t>(image);
  }
  return p;
}

Perm Perm::from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
  Perm p = identity(degree);
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const int point = cycle[i] - 1;
      if (point < 0 || point >= degree || used[point]) {
        throw InputError("cycles are not disjoint subsets of {1.." +
                         std::to_string(degree) + "}");
      }
      used[point] = true;
      p.images_[point] = static_cast<std::uint8_t>(cycle[(i + 1) % cycle.size()] - 1);
    }
  }
  return p;
}

Perm Perm::parse(int degree, std::string_view text) {
  std::vector<std::vector<int>> cycles;
  std::vector<int>* current = nullptr;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '(') {
      if (current) throw InputError("nested '(' in cycle notation");
      cycles.emplace_back();
      current = &cycles.back();
      ++i;
    } else if (c == ')') {
      if (!current) throw InputError("unbalanced ')' in cycle notation");
      current = nullptr;
      ++i;
    } else if (c == ' ' || c == ',') {
      ++i;
    } else if (c >= '0' && c <= '9') {
      if (!current) throw InputError("point outside a cycle in cycle notation");
      int value = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        value = value * 10 + (text[i] - '0');
        ++i;
      }
      current->push_back(value);
    } else {
      throw InputError(std::string("unexpected character '") + c + "' in cycle notation");
    }
  }
  if (current) throw InputError("unterminated cycle in cycle notation");
  return from_cycles(degree, cycles);
}

Perm Perm::inverse() const {
  Perm r;
  r.degree_ = degree_;
  for (int i = 0; i < degree_; ++i) r.images_[images_[i]] = static_cast<std::uint8_t>(i);
  return r;
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree_; ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::vector<Cycle> Perm::cycles() const {
  std::vector<Cycle> out;
  std::array<bool, kMaxDegree> seen{};
  for (int start = 0; start < degree_; ++start) {
    if (seen[start]) continue;
    Cycle c;
    for (int x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      c.support.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

Cycle Perm::cycle_of(int point) const {
  Cycle c;
  int x = point;
  do {
    c.support.push_back(x);
    x = images_[x];
  } while (x != point);
  std::rotate(c.support.begin(), std::min_element(c.support.begin(), c.support.end()),
              c.support.end());
  return c;
}

Partition Perm::cycle_type() const {
  std::vector<int> lengths;
  for (const auto& c : cycles()) lengths.push_back(c.length());
  return Partition(std::move(lengths));
}

std::string Perm::to_string() const {
  std::string out;
  for (const auto& c : cycles()) {
    if (c.length() > 1) out += c.to_string();
  }
  return out.empty() ? "()" : out;
}

std::string Perm::to_full_string() const {
  std::string out;
  for (const auto& c : cycles()) out += c.to_string();
  return out;
}

std::vector<int> Perm::images() const {
  std::vector<int> out(degree_);
  for (int i = 0; i < degree_; ++i) out[i] = images_[i] + 1;
  return out;
}

Perm compose(const Perm& p, const Perm& q) {
  if (p.degree_ != q.degree_) throw InputError("compose: degree mismatch");
  Perm r;
  r.degree_ = p.degree_;
  for (int i = 0; i < p.degree_; ++i) r.images_[i] = p.images_[q.images_[i]];
  return r;
}

Perm conjugate(const Perm& p, const Perm& tau) {
  if (p.degree_ != tau.degree_) throw InputError("conjugate: degree mismatch");
  // (tau p tau^-1)(tau(x)) = tau(p(x))
  Perm r;
  r.degree_ = p.degree_;
  for (int x = 0; x < p.degree_; ++x) r.images_[tau.images_[x]] = tau.images_[p.images_[x]];
  return r;
}

Cycle relabel(const Cycle& c, const Perm& tau) {
  Cycle r;
  r.support.reserve(c.support.size());
  for (int x : c.support) r.support.push_back(tau(x));
  std::rotate(r.support.begin(), std::min_element(r.support.begin(), r.support.end()),
              r.support.end());
  return r;
}

std::vector<std::vector<int>> orbits(std::span<const Perm> perms, int degree) {
  std::vector<int> parent(degree);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Perm& p : perms) {
    if (p.degree() != degree) throw InputError("orbits: degree mismatch");
    for (int x = 0; x < degree; ++x) {
      const int a = find(x);
      const int b = find(p(x));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<int, std::vector<int>> by_root;
  for (int x = 0; x < degree; ++x) by_root[find(x)].push_back(x);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : by_root) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_transitive(std::span<const Perm> perms, int degree) {
  if (degree <= 1) return true;
  return orbits(perms, degree).size() == 1;
}

const std::vector<Perm>& all_perms(int degree) {
  check_degree(degree);
  if (degree > 9) throw InputError("all_perms: degree too large for exhaustive search");
  static std::mutex mutex;
  static std::array<std::vector<Perm>, 10> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[degree];
  if (slot.empty()) {
    std::vector<int> images(degree);
    std::iota(images.begin(), images.end(), 1);
    do {
      slot.push_back(Perm::from_images(images));
    } while (std::next_permutation(images.begin(), images.end()));
  }
  return slot;
}

std::vector<Perm> perms_with_cycle_type(const Partition& type) {
  std::vector<Perm> out;
  for (const Perm& p : all_perms(type.sum())) {
    if (p.cycle_type() == type) out.push_back(p);
  }
  return out;
}

}  // namespace hurwitz
