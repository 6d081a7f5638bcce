#include "arrowkit/orders.hpp"

#include <algorithm>
#include <numeric>

#include "arrowkit/error.hpp"

namespace arrowkit {

namespace {

bool valid_label(const std::string& label) {
  if (label.empty()) return false;
  return std::all_of(label.begin(), label.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

void require_same_carrier(const AlternativeSet& lhs, const AlternativeSet& rhs, const char* what) {
  if (!(lhs == rhs))
    throw CarrierMismatch(std::string(what) + ": carriers " + lhs.to_string() + " and " + rhs.to_string() +
                          " differ");
}

}  // namespace

AlternativeSet::AlternativeSet(std::vector<std::string> labels) {
  if (labels.empty()) throw InvalidArgument("an alternative set needs at least one alternative");
  if (labels.size() > kMaxAlternatives)
    throw InvalidArgument("at most " + std::to_string(kMaxAlternatives) + " alternatives are supported");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!valid_label(labels[i])) throw InvalidArgument("invalid alternative label '" + labels[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (labels[i] == labels[j]) throw InvalidArgument("duplicate alternative label '" + labels[i] + "'");
  }
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

AlternativeSet AlternativeSet::standard(std::size_t n) {
  if (n == 0 || n > kMaxAlternatives)
    throw InvalidArgument("alternative count must be in 1.." + std::to_string(kMaxAlternatives));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>('a' + i));
  return AlternativeSet(std::move(labels));
}

std::optional<std::size_t> AlternativeSet::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < size(); ++i)
    if ((*labels_)[i] == label) return i;
  return std::nullopt;
}

AlternativeSet AlternativeSet::subset(SubsetMask mask) const {
  if (mask == 0 || (mask & ~full_mask()) != 0) throw InvalidArgument("invalid subset mask");
  if (mask == full_mask()) return *this;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < size(); ++i)
    if (mask & (SubsetMask{1} << i)) labels.push_back((*labels_)[i]);
  return AlternativeSet(std::move(labels));
}

bool AlternativeSet::operator==(const AlternativeSet& other) const noexcept {
  return labels_ == other.labels_ || *labels_ == *other.labels_;
}

std::string AlternativeSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) out += ',';
    out += (*labels_)[i];
  }
  return out + "}";
}

Relation::Relation(AlternativeSet carrier) : carrier_(std::move(carrier)) {}

Relation Relation::from_bits(AlternativeSet carrier, Bits bits) {
  Relation out(std::move(carrier));
  const std::size_t n = out.size();
  const Bits used = n * n == 64 ? ~Bits{0} : (Bits{1} << (n * n)) - 1;
  if (bits & ~used) throw InvalidArgument("relation bits outside the n×n matrix");
  out.bits_ = bits;
  return out;
}

Relation Relation::identity(AlternativeSet carrier) {
  return from_predicate(std::move(carrier), [](std::size_t a, std::size_t b) { return a == b; });
}

Relation Relation::full(AlternativeSet carrier) {
  return from_predicate(std::move(carrier), [](std::size_t, std::size_t) { return true; });
}

Relation Relation::from_pairs(AlternativeSet carrier,
                              std::initializer_list<std::pair<std::size_t, std::size_t>> pairs) {
  Relation out(std::move(carrier));
  const std::size_t n = out.size();
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw InvalidArgument("pair index outside the carrier");
    out.bits_ |= mask(n, a, b);
  }
  return out;
}

Relation Relation::linear(AlternativeSet carrier, std::span<const std::size_t> ranking) {
  const std::size_t n = carrier.size();
  if (ranking.size() != n) throw InvalidArgument("ranking must list every alternative once");
  std::vector<std::size_t> position(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (ranking[r] >= n || position[ranking[r]] != n)
      throw InvalidArgument("ranking must list every alternative once");
    position[ranking[r]] = r;
  }
  return from_predicate(std::move(carrier),
                        [&](std::size_t a, std::size_t b) { return position[a] <= position[b]; });
}

bool Relation::operator==(const Relation& other) const {
  require_same_carrier(carrier_, other.carrier_, "relation comparison");
  return bits_ == other.bits_;
}

std::strong_ordering Relation::operator<=>(const Relation& other) const {
  require_same_carrier(carrier_, other.carrier_, "relation comparison");
  return bits_ <=> other.bits_;
}

bool is_transitive_bits(Relation::Bits bits, std::size_t n) noexcept {
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!Relation::test(bits, n, a, b)) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (Relation::test(bits, n, b, c) && !Relation::test(bits, n, a, c)) return false;
    }
  return true;
}

bool is_connected_bits(Relation::Bits bits, std::size_t n) noexcept {
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      if (!Relation::test(bits, n, a, b) && !Relation::test(bits, n, b, a)) return false;
  return true;
}

bool is_weak_order_bits(Relation::Bits bits, std::size_t n) noexcept {
  return is_connected_bits(bits, n) && is_transitive_bits(bits, n);
}

bool is_linear_order_bits(Relation::Bits bits, std::size_t n) noexcept {
  if (!is_weak_order_bits(bits, n)) return false;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (Relation::test(bits, n, a, b) && Relation::test(bits, n, b, a)) return false;
  return true;
}

Relation::Bits strict_bits(Relation::Bits bits, std::size_t n) noexcept {
  return bits & ~converse_bits(bits, n);
}

Relation::Bits converse_bits(Relation::Bits bits, std::size_t n) noexcept {
  Relation::Bits out = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (Relation::test(bits, n, a, b)) out |= Relation::mask(n, b, a);
  return out;
}

bool check_property(const Relation& rel, Property prop) {
  const std::size_t n = rel.size();
  const auto bits = rel.bits();
  switch (prop) {
    case Property::reflexive:
      for (std::size_t a = 0; a < n; ++a)
        if (!rel.holds(a, a)) return false;
      return true;
    case Property::irreflexive:
      for (std::size_t a = 0; a < n; ++a)
        if (rel.holds(a, a)) return false;
      return true;
    case Property::symmetric:
      return bits == converse_bits(bits, n);
    case Property::antisymmetric:
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          if (rel.holds(a, b) && rel.holds(b, a)) return false;
      return true;
    case Property::transitive:
      return is_transitive_bits(bits, n);
    case Property::connected:
      return is_connected_bits(bits, n);
  }
  return false;
}

bool is_weak_order(const Relation& rel) { return is_weak_order_bits(rel.bits(), rel.size()); }

bool is_linear_order(const Relation& rel) { return is_linear_order_bits(rel.bits(), rel.size()); }

Relation strict_part(const Relation& rel) {
  return Relation::from_bits(rel.carrier(), strict_bits(rel.bits(), rel.size()));
}

Relation indifference_part(const Relation& rel) {
  return Relation::from_bits(rel.carrier(), rel.bits() & converse_bits(rel.bits(), rel.size()));
}

Relation converse(const Relation& rel) {
  return Relation::from_bits(rel.carrier(), converse_bits(rel.bits(), rel.size()));
}

Injection::Injection(AlternativeSet source, AlternativeSet target, std::vector<std::size_t> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (map_.size() != source_.size()) throw InvalidArgument("injection map must cover the source");
  std::vector<bool> seen(target_.size(), false);
  for (std::size_t image : map_) {
    if (image >= target_.size()) throw InvalidArgument("injection image outside the target");
    if (seen[image]) throw InvalidArgument("map is not injective");
    seen[image] = true;
  }
}

Injection Injection::inclusion(const AlternativeSet& subset, const AlternativeSet& superset) {
  std::vector<std::size_t> map;
  for (const auto& label : subset.labels()) {
    auto index = superset.index_of(label);
    if (!index)
      throw InvalidArgument("invalid restriction: '" + label + "' is not in " + superset.to_string());
    map.push_back(*index);
  }
  return Injection(subset, superset, std::move(map));
}

Injection Injection::identity(const AlternativeSet& set) {
  std::vector<std::size_t> map(set.size());
  std::iota(map.begin(), map.end(), std::size_t{0});
  return Injection(set, set, std::move(map));
}

Injection compose(const Injection& g, const Injection& f) {
  require_same_carrier(f.target(), g.source(), "injection composition");
  std::vector<std::size_t> map;
  for (std::size_t x : f.map()) map.push_back(g(x));
  return Injection(f.source(), g.target(), std::move(map));
}

std::vector<Injection> all_injections(const AlternativeSet& source, const AlternativeSet& target) {
  std::vector<Injection> out;
  const std::size_t k = source.size();
  const std::size_t n = target.size();
  if (k > n) return out;
  std::vector<std::size_t> image(k, 0);
  std::vector<bool> used(n, false);
  // Depth-first over image arrays in lexicographic order.
  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == k) {
      out.emplace_back(source, target, image);
      return;
    }
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y]) continue;
      used[y] = true;
      image[depth] = y;
      self(self, depth + 1);
      used[y] = false;
    }
  };
  recurse(recurse, 0);
  return out;
}

Relation::Bits pushforward_bits(Relation::Bits bits, std::size_t target_size,
                                std::span<const std::size_t> map) noexcept {
  const std::size_t k = map.size();
  Relation::Bits out = 0;
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y)
      if (Relation::test(bits, target_size, map[x], map[y])) out |= Relation::mask(k, x, y);
  return out;
}

Relation pushforward(const Relation& rel, const Injection& f) {
  require_same_carrier(rel.carrier(), f.target(), "pushforward");
  return Relation::from_bits(f.source(), pushforward_bits(rel.bits(), rel.size(), f.map()));
}

Relation restrict(const Relation& rel, const AlternativeSet& subset) {
  return pushforward(rel, Injection::inclusion(subset, rel.carrier()));
}

std::vector<Relation> enumerate_weak_orders(const AlternativeSet& carrier) {
  const std::size_t n = carrier.size();
  if (n > kMaxWeakEnumeration)
    throw InvalidArgument("weak-order enumeration is limited to n <= " + std::to_string(kMaxWeakEnumeration));
  // A weak order is an ordered partition: assign every alternative a level and
  // keep the assignments whose levels are exactly 0..k-1.
  std::vector<Relation> out;
  std::vector<std::size_t> level(n, 0);
  for (;;) {
    std::vector<bool> used(n, false);
    std::size_t top = 0;
    for (std::size_t l : level) {
      used[l] = true;
      top = std::max(top, l);
    }
    if (std::all_of(used.begin(), used.begin() + static_cast<std::ptrdiff_t>(top + 1), [](bool u) { return u; }))
      out.push_back(Relation::from_predicate(carrier, [&](std::size_t a, std::size_t b) { return level[a] <= level[b]; }));
    std::size_t i = 0;
    while (i < n && ++level[i] == n) level[i++] = 0;
    if (i == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Relation> enumerate_weak_orders(std::size_t n) {
  if (n < 1 || n > kMaxWeakEnumeration)
    throw InvalidArgument("weak-order enumeration requires 1 <= n <= " + std::to_string(kMaxWeakEnumeration));
  return enumerate_weak_orders(AlternativeSet::standard(n));
}

std::vector<Relation> enumerate_linear_orders(const AlternativeSet& carrier) {
  const std::size_t n = carrier.size();
  if (n > kMaxLinearEnumeration)
    throw InvalidArgument("linear-order enumeration is limited to n <= " + std::to_string(kMaxLinearEnumeration));
  std::vector<std::size_t> ranking(n);
  std::iota(ranking.begin(), ranking.end(), std::size_t{0});
  std::vector<Relation> out;
  do {
    out.push_back(Relation::linear(carrier, ranking));
  } while (std::next_permutation(ranking.begin(), ranking.end()));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Relation> enumerate_linear_orders(std::size_t n) {
  if (n < 1 || n > kMaxLinearEnumeration)
    throw InvalidArgument("linear-order enumeration requires 1 <= n <= " + std::to_string(kMaxLinearEnumeration));
  return enumerate_linear_orders(AlternativeSet::standard(n));
}

}  // namespace arrowkit
