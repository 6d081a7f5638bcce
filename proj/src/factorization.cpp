#include "arrowkit/factorization.hpp"

#include <algorithm>

#include "arrowkit/error.hpp"
#include "arrowkit/format.hpp"

namespace arrowkit {

namespace {

std::uint32_t table_mask(std::size_t voters) {
  const std::size_t bits = std::size_t{1} << voters;
  return bits == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << bits) - 1;
}

std::size_t hex_digits(std::size_t voters) { return ((std::size_t{1} << voters) + 3) / 4; }

bool all_linear(std::span<const Relation::Bits> ballots, std::size_t n) {
  for (auto b : ballots)
    if (!is_linear_order_bits(b, n)) return false;
  return true;
}

}  // namespace

BoolFn::BoolFn(std::size_t voters, std::uint32_t table) : voters_(voters), table_(table) {
  if (voters == 0 || voters > kMaxFamilyVoters)
    throw InvalidArgument("boolean functions support 1.." + std::to_string(kMaxFamilyVoters) + " voters");
  if (table & ~table_mask(voters)) throw InvalidArgument("truth table has bits beyond 2^m entries");
}

BoolFn BoolFn::projection(std::size_t voters, std::size_t voter) {
  if (voter >= voters) throw InvalidArgument("projection index outside the voter set");
  std::uint32_t table = 0;
  for (std::uint32_t u = 0; u < (std::uint32_t{1} << voters); ++u)
    if ((u >> voter) & 1U) table |= std::uint32_t{1} << u;
  return BoolFn(voters, table);
}

BoolFn BoolFn::from_hex(std::size_t voters, std::string_view hex) {
  if (voters == 0 || voters > kMaxFamilyVoters) throw InvalidArgument("voter count out of range");
  if (hex.size() != hex_digits(voters))
    throw ParseError("expected " + std::to_string(hex_digits(voters)) + " hex digits", 0, 1);
  std::uint32_t table = 0;
  for (std::size_t i = 0; i < hex.size(); ++i) {
    const char c = hex[i];
    std::uint32_t digit;
    if (c >= '0' && c <= '9')
      digit = c - '0';
    else if (c >= 'a' && c <= 'f')
      digit = c - 'a' + 10;
    else
      throw ParseError(std::string("invalid hex digit '") + c + "'", 0, i + 1);
    table = (table << 4) | digit;
  }
  if (table & ~table_mask(voters)) throw ParseError("truth table has bits beyond 2^m entries", 0, 1);
  return BoolFn(voters, table);
}

std::string BoolFn::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = hex_digits(voters_);
  std::string out(digits, '0');
  for (std::size_t i = 0; i < digits; ++i) out[digits - 1 - i] = kDigits[(table_ >> (4 * i)) & 0xFU];
  return out;
}

std::optional<std::size_t> BoolFn::projection_index() const {
  for (std::size_t i = 0; i < voters_; ++i)
    if (*this == projection(voters_, i)) return i;
  return std::nullopt;
}

BoolFn family_to_boolfn(const CoalitionFamily& family) {
  return BoolFn(family.voters(), static_cast<std::uint32_t>(family.members()));
}

CoalitionFamily boolfn_to_family(const BoolFn& h) { return CoalitionFamily(h.voters(), h.table()); }

std::string HomomorphismReport::to_text() const {
  if (holds) return "ok";
  if (law == "top" || law == "bottom" || law == "complement") return law + " fails at U=" + to_string(u);
  return law + " fails at U=" + to_string(u) + " V=" + to_string(v);
}

HomomorphismReport is_bool_homomorphism(const BoolFn& h) {
  const std::uint32_t everyone = Coalition::everyone(h.voters()).mask;
  if (!h({everyone})) return {false, "top", {everyone}, {}};
  if (h({0})) return {false, "bottom", {0}, {}};
  for (std::uint32_t u = 0; u <= everyone; ++u)
    for (std::uint32_t v = 0; v <= everyone; ++v)
      if (h({u & v}) != (h({u}) && h({v}))) return {false, "meet", {u}, {v}};
  for (std::uint32_t u = 0; u <= everyone; ++u)
    for (std::uint32_t v = 0; v <= everyone; ++v)
      if (h({u | v}) != (h({u}) || h({v}))) return {false, "join", {u}, {v}};
  for (std::uint32_t u = 0; u <= everyone; ++u)
    if (h({everyone & ~u}) == h({u})) return {false, "complement", {u}, {}};
  return {};
}

std::vector<BoolFn> enumerate_homomorphisms(std::size_t voters) {
  if (voters == 0 || voters > kMaxFamilyVoters)
    throw InvalidArgument("homomorphism enumeration supports 1.." + std::to_string(kMaxFamilyVoters) + " voters");
  std::vector<BoolFn> out;
  if (voters == kMaxFamilyVoters) {
    for (std::size_t i = 0; i < voters; ++i) {
      auto h = BoolFn::projection(voters, i);
      if (!is_bool_homomorphism(h).holds) throw InternalContradiction("a projection failed the homomorphism laws");
      out.push_back(h);
    }
    std::sort(out.begin(), out.end(), [](const BoolFn& x, const BoolFn& y) { return x.table() < y.table(); });
    return out;
  }
  const std::uint64_t tables = std::uint64_t{1} << (std::size_t{1} << voters);
  for (std::uint64_t t = 0; t < tables; ++t) {
    BoolFn h(voters, static_cast<std::uint32_t>(t));
    if (is_bool_homomorphism(h).holds) out.push_back(h);
  }
  return out;
}

Relation::Bits phi(const Relation& weak_order) {
  if (!is_weak_order(weak_order)) throw InvalidArgument("phi needs a weak order");
  return strict_bits(weak_order.bits(), weak_order.size());
}

std::vector<Coalition> psi(const Profile& p) {
  const std::size_t n = p.carrier().size();
  std::vector<Coalition> out(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) out[a * n + b] = strict_supporters(p, a, b);
  return out;
}

Relation::Bits apply_pointwise(const BoolFn& h, const std::vector<Coalition>& coalitions, std::size_t n) {
  if (coalitions.size() != n * n) throw InvalidArgument("coalition vector does not match the carrier size");
  Relation::Bits out = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (h(coalitions[a * n + b])) out |= Relation::mask(n, a, b);
  return out;
}

std::string FactorizationReport::to_text() const {
  std::string out = "h: " + h.to_hex() + "\n";
  out += std::string("homomorphism: ") + (homomorphism ? "yes" : "no") + "\n";
  out += "projection: " + (projection ? std::to_string(*projection) : std::string("none")) + "\n";
  if (square_commutes) return out + "square: OK\n";
  out += "square: FAIL(";
  if (witness) {
    const auto& sub = witness->p.carrier();
    out += "A=" + sub.to_string() + " p=" + format_profile(witness->p) +
           " lhs=" + format_relation(Relation::from_bits(sub, witness->lhs)) +
           " rhs=" + format_relation(Relation::from_bits(sub, witness->rhs));
  }
  return out + ")\n";
}

FactorizationReport check_factorization(const Swf& swf) {
  require_hypotheses(swf, {Axiom::three_alternatives, Axiom::UD, Axiom::IIA, Axiom::P, Axiom::weak_order_outputs});
  const Domain& d = swf.domain();
  const AlternativeSet& carrier = d.carrier();
  const std::size_t n = carrier.size();
  const BoolFn h = family_to_boolfn(decisive_family(swf));
  FactorizationReport report{h, false, std::nullopt, true, std::nullopt};
  report.homomorphism = is_bool_homomorphism(h).holds;
  report.projection = h.projection_index();

  std::vector<std::size_t> linear_rows;
  for (std::size_t k = 0; k < d.size(); ++k)
    if (all_linear(d.ballots(k), n)) linear_rows.push_back(k);

  // σ_A(q|A) is read off as σ(q)|A; IIA makes this independent of the lift q.
  for (SubsetMask mask = 1; mask <= carrier.full_mask(); ++mask) {
    const AlternativeSet sub = carrier.subset(mask);
    const std::size_t size = sub.size();
    for (auto k : linear_rows) {
      const Profile p = restrict_profile(d.profile(k), sub);
      const Relation::Bits lhs = phi(restrict(swf.output(k), sub));
      const Relation::Bits rhs = apply_pointwise(h, psi(p), size);
      if (lhs != rhs) {
        report.square_commutes = false;
        report.witness = FactorizationWitness{mask, p, lhs, rhs};
        return report;
      }
    }
  }
  return report;
}

}  // namespace arrowkit
