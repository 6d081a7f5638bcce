#include "arrowkit/format.hpp"

#include <algorithm>
#include <cctype>

#include "arrowkit/error.hpp"

namespace arrowkit {

namespace {

bool label_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

}  // namespace

std::string format_chain(const Relation& weak_order) {
  if (!is_weak_order(weak_order)) throw InvalidArgument("chain syntax needs a weak order");
  const std::size_t n = weak_order.size();
  // Level of x = number of alternatives strictly above x.
  std::vector<std::size_t> level(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (weak_order.holds(y, x) && !weak_order.holds(x, y)) ++level[x];
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return level[x] < level[y]; });
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out += level[order[i]] == level[order[i - 1]] ? '~' : '>';
    out += weak_order.carrier().label(order[i]);
  }
  return out;
}

std::string format_relation(const Relation& rel) {
  if (is_weak_order(rel)) return format_chain(rel);
  std::string out = "{";
  bool first = true;
  for (std::size_t a = 0; a < rel.size(); ++a)
    for (std::size_t b = 0; b < rel.size(); ++b) {
      if (!rel.holds(a, b)) continue;
      if (!first) out += ',';
      out += "(" + rel.carrier().label(a) + "," + rel.carrier().label(b) + ")";
      first = false;
    }
  return out + "}";
}

Relation parse_chain(const AlternativeSet& carrier, std::string_view text) {
  const std::size_t n = carrier.size();
  std::vector<std::size_t> level(n, n);
  std::size_t current = 0;
  std::size_t pos = 0;
  auto col = [&] { return pos + 1; };
  auto skip = [&] {
    while (pos < text.size() && space(text[pos])) ++pos;
  };

  skip();
  for (;;) {
    if (pos >= text.size() || !label_char(text[pos])) throw ParseError("expected an alternative label", 0, col());
    const std::size_t start = pos;
    while (pos < text.size() && label_char(text[pos])) ++pos;
    const std::string_view label = text.substr(start, pos - start);
    auto index = carrier.index_of(label);
    if (!index)
      throw ParseError("unknown alternative '" + std::string(label) + "' (carrier is " + carrier.to_string() + ")",
                       0, start + 1);
    if (level[*index] != n) throw ParseError("alternative '" + std::string(label) + "' appears twice", 0, start + 1);
    level[*index] = current;
    skip();
    if (pos == text.size()) break;
    if (text[pos] == '>')
      ++current;
    else if (text[pos] != '~')
      throw ParseError(std::string("unexpected character '") + text[pos] + "'", 0, col());
    ++pos;
    skip();
  }
  for (std::size_t x = 0; x < n; ++x)
    if (level[x] == n) throw ParseError("alternative '" + carrier.label(x) + "' is missing", 0, text.size() + 1);
  return Relation::from_predicate(carrier, [&](std::size_t a, std::size_t b) { return level[a] <= level[b]; });
}

Relation parse_relation(const AlternativeSet& carrier, std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && space(text[pos])) ++pos;
  };
  skip();
  if (pos == text.size() || text[pos] != '{') return parse_chain(carrier, text);

  auto expect = [&](char c) {
    skip();
    if (pos >= text.size() || text[pos] != c) throw ParseError(std::string("expected '") + c + "'", 0, pos + 1);
    ++pos;
  };
  auto label = [&] {
    skip();
    const std::size_t start = pos;
    while (pos < text.size() && label_char(text[pos])) ++pos;
    if (start == pos) throw ParseError("expected an alternative label", 0, start + 1);
    const auto index = carrier.index_of(text.substr(start, pos - start));
    if (!index)
      throw ParseError("unknown alternative '" + std::string(text.substr(start, pos - start)) + "'", 0, start + 1);
    return *index;
  };

  const std::size_t n = carrier.size();
  Relation::Bits bits = 0;
  expect('{');
  skip();
  if (pos < text.size() && text[pos] == '}') {
    ++pos;
  } else {
    for (;;) {
      expect('(');
      const std::size_t a = label();
      expect(',');
      const std::size_t b = label();
      expect(')');
      bits |= Relation::mask(n, a, b);
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      expect('}');
      break;
    }
  }
  skip();
  if (pos != text.size()) throw ParseError("trailing characters after relation", 0, pos + 1);
  return Relation::from_bits(carrier, bits);
}

std::string format_profile(const Profile& p) {
  std::string out;
  for (std::size_t i = 0; i < p.voters(); ++i) {
    if (i) out += " ; ";
    out += format_chain(p.entry(i));
  }
  return out;
}

Profile parse_profile(const AlternativeSet& carrier, std::string_view text) {
  std::vector<Relation> entries;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = text.find(';', start);
    const std::string_view piece = text.substr(start, end == std::string_view::npos ? end : end - start);
    try {
      entries.push_back(parse_chain(carrier, piece));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), 0, start + e.column());
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  if (entries.size() > kMaxVoters) throw ParseError("too many voters", 0, 1);
  return Profile(carrier, entries);
}

}  // namespace arrowkit
