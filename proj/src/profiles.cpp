#include "arrowkit/profiles.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_set>

#include "arrowkit/error.hpp"

namespace arrowkit {

namespace {

std::strong_ordering compare_ballots(std::span<const Relation::Bits> lhs, std::span<const Relation::Bits> rhs) {
  return std::lexicographical_compare_three_way(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
}

void require_voters(std::size_t voters) {
  if (voters == 0 || voters > kMaxVoters)
    throw InvalidArgument("voter count must be in 1.." + std::to_string(kMaxVoters));
}

std::vector<std::size_t> inclusion_map(const AlternativeSet& subset, const AlternativeSet& carrier) {
  auto f = Injection::inclusion(subset, carrier);
  return {f.map().begin(), f.map().end()};
}

std::vector<SubsetMask> masks_of_size(std::size_t n, std::size_t k) {
  std::vector<SubsetMask> out;
  for (SubsetMask mask = 1; mask < (SubsetMask{1} << n); ++mask)
    if (static_cast<std::size_t>(std::popcount(mask)) == k) out.push_back(mask);
  return out;
}

UdReport check_ud_against(const Domain& domain, bool linear_targets) {
  const AlternativeSet& carrier = domain.carrier();
  const std::size_t n = carrier.size();
  if (n < 3) throw InvalidArgument("UD needs at least three alternatives, carrier is " + carrier.to_string());
  const std::size_t m = domain.voters();

  for (SubsetMask mask : masks_of_size(n, 3)) {
    const AlternativeSet triple = carrier.subset(mask);
    const auto targets = linear_targets ? enumerate_linear_orders(triple) : enumerate_weak_orders(triple);
    std::vector<int> index_of(512, -1);
    for (std::size_t t = 0; t < targets.size(); ++t) index_of[targets[t].bits()] = static_cast<int>(t);
    const auto map = inclusion_map(triple, carrier);

    std::unordered_set<std::uint64_t> seen;
    for (std::size_t k = 0; k < domain.size(); ++k) {
      std::uint64_t key = 0;
      bool in_targets = true;
      for (auto ballot : domain.ballots(k)) {
        int t = index_of[pushforward_bits(ballot, n, map)];
        if (t < 0) {
          in_targets = false;
          break;
        }
        key = key * targets.size() + static_cast<std::uint64_t>(t);
      }
      if (in_targets) seen.insert(key);
    }

    // Scan target profiles in canonical order for the first unrealized one.
    std::vector<std::size_t> digits(m, 0);
    for (;;) {
      std::uint64_t key = 0;
      for (std::size_t d : digits) key = key * targets.size() + d;
      if (!seen.contains(key)) {
        std::vector<Relation> entries;
        for (std::size_t d : digits) entries.push_back(targets[d]);
        return {false, triple, Profile(triple, entries)};
      }
      std::size_t i = m;
      while (i > 0 && ++digits[i - 1] == targets.size()) digits[--i] = 0;
      if (i == 0) break;
    }
  }
  return {};
}

}  // namespace

Coalition Coalition::of(std::initializer_list<std::size_t> voters) {
  Coalition out;
  for (std::size_t v : voters) {
    if (v >= 32) throw InvalidArgument("voter index out of range");
    out.mask |= std::uint32_t{1} << v;
  }
  return out;
}

std::size_t Coalition::size() const noexcept { return static_cast<std::size_t>(std::popcount(mask)); }

std::string to_string(Coalition coalition) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < 32; ++i) {
    if (!coalition.contains(i)) continue;
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

Profile::Profile(AlternativeSet carrier, std::vector<Relation::Bits> ballots, bool)
    : carrier_(std::move(carrier)), ballots_(std::move(ballots)) {}

Profile::Profile(AlternativeSet carrier, const std::vector<Relation>& entries) : carrier_(std::move(carrier)) {
  if (entries.empty()) throw InvalidArgument("a profile needs at least one voter");
  require_voters(entries.size());
  for (const auto& entry : entries) {
    if (!(entry.carrier() == carrier_)) throw CarrierMismatch("profile entry over " + entry.carrier().to_string());
    if (!is_weak_order(entry)) throw InvalidArgument("profile entries must be weak orders");
    ballots_.push_back(entry.bits());
  }
}

Profile Profile::from_ballots(AlternativeSet carrier, std::vector<Relation::Bits> ballots) {
  require_voters(ballots.size());
  for (auto ballot : ballots) {
    Relation::from_bits(carrier, ballot);
    if (!is_weak_order_bits(ballot, carrier.size())) throw InvalidArgument("profile entries must be weak orders");
  }
  return Profile(std::move(carrier), std::move(ballots), true);
}

bool Profile::operator==(const Profile& other) const {
  if (!(carrier_ == other.carrier_)) throw CarrierMismatch("profile comparison across carriers");
  return ballots_ == other.ballots_;
}

std::strong_ordering Profile::operator<=>(const Profile& other) const {
  if (!(carrier_ == other.carrier_)) throw CarrierMismatch("profile comparison across carriers");
  return compare_ballots(ballots_, other.ballots_);
}

Profile pushforward(const Profile& p, const Injection& f) {
  if (!(p.carrier() == f.target())) throw CarrierMismatch("profile pushforward: carrier is not the injection target");
  std::vector<Relation::Bits> out;
  for (auto ballot : p.ballots()) out.push_back(pushforward_bits(ballot, p.carrier().size(), f.map()));
  return Profile::from_ballots(f.source(), std::move(out));
}

Profile restrict_profile(const Profile& p, const AlternativeSet& subset) {
  return pushforward(p, Injection::inclusion(subset, p.carrier()));
}

Coalition strict_supporters(std::span<const Relation::Bits> ballots, std::size_t n, std::size_t a, std::size_t b) {
  Coalition out;
  for (std::size_t i = 0; i < ballots.size(); ++i)
    if (Relation::test(ballots[i], n, a, b) && !Relation::test(ballots[i], n, b, a)) out.mask |= std::uint32_t{1} << i;
  return out;
}

bool coalition_strict(const Profile& p, Coalition coalition, std::size_t a, std::size_t b) {
  const std::size_t n = p.carrier().size();
  if (a >= n || b >= n) throw InvalidArgument("alternative index outside the carrier");
  if (a == b) throw InvalidArgument("coalition_strict needs distinct alternatives");
  if (coalition.mask & ~Coalition::everyone(p.voters()).mask) throw InvalidArgument("coalition outside the voter set");
  return (strict_supporters(p, a, b).mask & coalition.mask) == coalition.mask;
}

Domain::Domain(AlternativeSet carrier, std::size_t voters, DomainKind kind, std::vector<Relation::Bits> ballots)
    : carrier_(std::move(carrier)), voters_(voters), kind_(kind), ballots_(std::move(ballots)) {
  const std::size_t n = carrier_.size();
  all_linear_ = std::all_of(ballots_.begin(), ballots_.end(), [n](auto b) { return is_linear_order_bits(b, n); });
}

Domain Domain::product(AlternativeSet carrier, std::size_t voters, DomainKind kind,
                       const std::vector<Relation>& orders) {
  require_voters(voters);
  std::size_t count = 1;
  for (std::size_t i = 0; i < voters; ++i) {
    count *= orders.size();
    if (count > kMaxDomainProfiles)
      throw InvalidArgument("domain would exceed " + std::to_string(kMaxDomainProfiles) + " profiles");
  }
  std::vector<Relation::Bits> ballots;
  ballots.reserve(count * voters);
  std::vector<std::size_t> digits(voters, 0);
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t d : digits) ballots.push_back(orders[d].bits());
    std::size_t i = voters;
    while (i > 0 && ++digits[i - 1] == orders.size()) digits[--i] = 0;
  }
  return Domain(std::move(carrier), voters, kind, std::move(ballots));
}

Domain Domain::full_weak(AlternativeSet carrier, std::size_t voters) {
  auto orders = enumerate_weak_orders(carrier);
  return product(std::move(carrier), voters, DomainKind::full_weak, orders);
}

Domain Domain::full_linear(AlternativeSet carrier, std::size_t voters) {
  auto orders = enumerate_linear_orders(carrier);
  return product(std::move(carrier), voters, DomainKind::full_linear, orders);
}

Domain Domain::from_profiles(AlternativeSet carrier, std::size_t voters, std::vector<Profile> profiles) {
  require_voters(voters);
  if (profiles.empty()) throw InvalidArgument("an explicit domain needs at least one profile");
  if (profiles.size() > kMaxDomainProfiles) throw InvalidArgument("too many profiles");
  for (const auto& p : profiles) {
    if (!(p.carrier() == carrier)) throw CarrierMismatch("domain profile over " + p.carrier().to_string());
    if (p.voters() != voters) throw InvalidArgument("domain profile has the wrong number of voters");
  }
  std::sort(profiles.begin(), profiles.end());
  if (std::adjacent_find(profiles.begin(), profiles.end()) != profiles.end())
    throw InvalidArgument("duplicate profile in explicit domain");
  std::vector<Relation::Bits> ballots;
  ballots.reserve(profiles.size() * voters);
  for (const auto& p : profiles) ballots.insert(ballots.end(), p.ballots().begin(), p.ballots().end());
  return Domain(std::move(carrier), voters, DomainKind::explicit_set, std::move(ballots));
}

Profile Domain::profile(std::size_t index) const {
  if (index >= size()) throw InvalidArgument("profile index out of range");
  auto b = ballots(index);
  return Profile::from_ballots(carrier_, {b.begin(), b.end()});
}

std::optional<std::size_t> Domain::find(std::span<const Relation::Bits> target) const noexcept {
  if (target.size() != voters_) return std::nullopt;
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    auto order = compare_ballots(ballots(mid), target);
    if (order == 0) return mid;
    if (order < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return std::nullopt;
}

std::optional<std::size_t> Domain::find(const Profile& p) const {
  if (!(p.carrier() == carrier_)) throw CarrierMismatch("domain lookup across carriers");
  return find(p.ballots());
}

bool Domain::operator==(const Domain& other) const noexcept {
  return carrier_ == other.carrier_ && voters_ == other.voters_ && ballots_ == other.ballots_;
}

UdReport check_UD(const Domain& domain) { return check_ud_against(domain, false); }

UdReport check_UD_linear(const Domain& domain) { return check_ud_against(domain, true); }

bool unrestricted(const Domain& domain) {
  if (domain.carrier().size() < 3) return false;
  return domain.all_linear() ? check_UD_linear(domain).holds : check_UD(domain).holds;
}

DomainFamily::DomainFamily(AlternativeSet universe, std::size_t voters)
    : universe_(std::move(universe)), voters_(voters) {
  if (universe_.size() > kMaxFamilyUniverse)
    throw InvalidArgument("domain families are limited to " + std::to_string(kMaxFamilyUniverse) + " alternatives");
  require_voters(voters);
  const SubsetMask count = SubsetMask{1} << universe_.size();
  subsets_.resize(count);
  slots_.resize(count);
  for (SubsetMask mask = 1; mask < count; ++mask) subsets_[mask] = universe_.subset(mask);
}

DomainFamily DomainFamily::from_top(const Domain& top) {
  DomainFamily family(top.carrier(), top.voters());
  const std::size_t n = top.carrier().size();
  const std::size_t m = top.voters();
  for (SubsetMask mask = 1; mask <= family.universe_.full_mask(); ++mask) {
    const AlternativeSet& sub = family.subset(mask);
    if (mask == family.universe_.full_mask()) {
      family.set(mask, std::make_shared<const Domain>(top));
    } else if (top.kind() == DomainKind::full_weak) {
      family.set(mask, share(Domain::full_weak(sub, m)));
    } else if (top.kind() == DomainKind::full_linear) {
      family.set(mask, share(Domain::full_linear(sub, m)));
    } else {
      const auto map = inclusion_map(sub, top.carrier());
      std::vector<std::vector<Relation::Bits>> images;
      images.reserve(top.size());
      for (std::size_t k = 0; k < top.size(); ++k) {
        std::vector<Relation::Bits> image;
        for (auto ballot : top.ballots(k)) image.push_back(pushforward_bits(ballot, n, map));
        images.push_back(std::move(image));
      }
      std::sort(images.begin(), images.end());
      images.erase(std::unique(images.begin(), images.end()), images.end());
      std::vector<Profile> profiles;
      for (auto& image : images) profiles.push_back(Profile::from_ballots(sub, std::move(image)));
      family.set(mask, share(Domain::from_profiles(sub, m, std::move(profiles))));
    }
  }
  return family;
}

void DomainFamily::set(SubsetMask mask, DomainPtr domain) {
  if (mask == 0 || mask >= slots_.size()) throw InvalidArgument("invalid subset mask");
  if (!domain) throw InvalidArgument("null domain");
  if (!(domain->carrier() == subset(mask)))
    throw CarrierMismatch("domain over " + domain->carrier().to_string() + " stored at " + subset(mask).to_string());
  if (domain->voters() != voters_) throw InvalidArgument("domain has the wrong number of voters");
  slots_[mask] = std::move(domain);
}

const DomainPtr& DomainFamily::at(SubsetMask mask) const {
  if (!has(mask)) throw InvalidArgument("domain family is missing subset mask " + std::to_string(mask));
  return slots_[mask];
}

CudReport check_CUD(const DomainFamily& family) {
  const AlternativeSet& universe = family.universe();
  const SubsetMask full = universe.full_mask();
  const std::size_t m = family.voters();
  for (SubsetMask mask = 1; mask <= full; ++mask) family.at(mask);

  CudReport report;
  report.small_sets_full = true;
  report.small_sets_full_linear = true;
  for (SubsetMask mask = 1; mask <= full; ++mask) {
    const std::size_t k = static_cast<std::size_t>(std::popcount(mask));
    if (k > 3) continue;
    const Domain& d = *family.at(mask);
    std::size_t weak = 1;
    std::size_t linear = 1;
    const std::size_t w = enumerate_weak_orders(k).size();
    std::size_t factorial = 1;
    for (std::size_t i = 2; i <= k; ++i) factorial *= i;
    for (std::size_t i = 0; i < m; ++i) {
      weak *= w;
      linear *= factorial;
    }
    if (d.size() != weak) report.small_sets_full = false;
    if (d.size() != linear || !d.all_linear()) report.small_sets_full_linear = false;
  }

  report.epis_preserved = true;
  report.restrictions_closed = true;
  for (SubsetMask big = 1; big <= full; ++big) {
    const Domain& from = *family.at(big);
    for (SubsetMask small = (big - 1) & big; small != 0; small = (small - 1) & big) {
      const Domain& to = *family.at(small);
      const auto map = inclusion_map(to.carrier(), from.carrier());
      std::vector<bool> hit(to.size(), false);
      std::vector<Relation::Bits> image(m);
      for (std::size_t k = 0; k < from.size(); ++k) {
        auto src = from.ballots(k);
        for (std::size_t i = 0; i < m; ++i) image[i] = pushforward_bits(src[i], from.carrier().size(), map);
        if (auto idx = to.find(image))
          hit[*idx] = true;
        else
          report.restrictions_closed = false;
      }
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) report.epis_preserved = false;
    }
  }
  return report;
}

}  // namespace arrowkit
