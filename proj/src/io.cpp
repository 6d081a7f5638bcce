#include "arrowkit/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "arrowkit/error.hpp"
#include "arrowkit/format.hpp"

namespace arrowkit {

namespace {

struct Line {
  std::size_t number;  // 1-based
  std::size_t offset;  // 0-based column of text[0]
  std::string text;    // comment stripped and trimmed
};

bool blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  for (std::size_t number = 1; std::getline(in, raw); ++number) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::size_t begin = 0;
    while (begin < raw.size() && blank(raw[begin])) ++begin;
    std::size_t end = raw.size();
    while (end > begin && blank(raw[end - 1])) --end;
    if (begin == end) continue;
    out.push_back({number, begin, raw.substr(begin, end - begin)});
  }
  return out;
}

struct Header {
  std::optional<AlternativeSet> carrier;
  std::optional<std::size_t> voters;
  std::optional<DomainKind> kind;
  std::size_t kind_line = 0;
  std::size_t body = 0;  // index of the first non-header line
};

std::size_t value_start(const std::string& text, std::size_t colon) {
  std::size_t pos = colon + 1;
  while (pos < text.size() && blank(text[pos])) ++pos;
  return pos;
}

Header read_header(const std::vector<Line>& lines) {
  Header h;
  std::size_t i = 0;
  for (; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const auto colon = line.text.find(':');
    if (colon == std::string::npos) break;
    const std::string key = line.text.substr(0, colon);
    const std::size_t start = value_start(line.text, colon);
    const std::string value = line.text.substr(start);
    const std::size_t column = line.offset + start + 1;
    if (key == "alternatives") {
      std::istringstream words(value);
      std::vector<std::string> labels;
      for (std::string w; words >> w;) labels.push_back(w);
      try {
        h.carrier = AlternativeSet(labels);
      } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), line.number, column);
      }
    } else if (key == "voters") {
      std::size_t voters = 0;
      const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), voters);
      if (ec != std::errc() || end != value.data() + value.size() || voters == 0 || voters > kMaxVoters)
        throw ParseError("voters must be an integer in 1.." + std::to_string(kMaxVoters), line.number, column);
      h.voters = voters;
    } else if (key == "domain") {
      if (value == "full-weak")
        h.kind = DomainKind::full_weak;
      else if (value == "full-linear")
        h.kind = DomainKind::full_linear;
      else
        throw ParseError("domain must be 'full-weak' or 'full-linear'", line.number, column);
      h.kind_line = line.number;
    } else {
      throw ParseError("unknown header key '" + key + "'", line.number, line.offset + 1);
    }
  }
  const std::size_t where = i < lines.size() ? lines[i].number : (lines.empty() ? 1 : lines.back().number + 1);
  if (!h.carrier) throw ParseError("missing 'alternatives:' header", where, 1);
  if (!h.voters) throw ParseError("missing 'voters:' header", where, 1);
  h.body = i;
  return h;
}

Profile read_profile(const Header& h, const Line& line, std::string_view text, std::size_t offset) {
  try {
    Profile p = parse_profile(*h.carrier, text);
    if (p.voters() != *h.voters)
      throw ParseError("profile has " + std::to_string(p.voters()) + " ballots, expected " + std::to_string(*h.voters),
                       line.number, line.offset + offset + 1);
    return p;
  } catch (const ParseError& e) {
    if (e.line() != 0) throw;
    throw ParseError(e.message(), line.number, line.offset + offset + e.column());
  }
}

DomainPtr declared_domain(const Header& h) {
  return share(*h.kind == DomainKind::full_weak ? Domain::full_weak(*h.carrier, *h.voters)
                                                : Domain::full_linear(*h.carrier, *h.voters));
}

std::uint64_t power(std::uint64_t base, std::size_t exponent) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) out *= base;
  return out;
}

// An explicit profile list that happens to be a full domain gets the full kind.
DomainPtr classify(const AlternativeSet& carrier, std::size_t voters, std::vector<Profile> profiles) {
  Domain explicit_domain = Domain::from_profiles(carrier, voters, std::move(profiles));
  const std::size_t n = carrier.size();
  if (n <= kMaxWeakEnumeration &&
      explicit_domain.size() == power(enumerate_weak_orders(carrier).size(), voters))
    return share(Domain::full_weak(carrier, voters));
  if (explicit_domain.all_linear() && n <= kMaxLinearEnumeration &&
      explicit_domain.size() == power(enumerate_linear_orders(carrier).size(), voters))
    return share(Domain::full_linear(carrier, voters));
  return share(std::move(explicit_domain));
}

void write_header(std::ostream& out, const Domain& d) {
  out << "alternatives:";
  for (const auto& label : d.carrier().labels()) out << ' ' << label;
  out << "\nvoters: " << d.voters() << '\n';
  if (d.kind() == DomainKind::full_weak) out << "domain: full-weak\n";
  if (d.kind() == DomainKind::full_linear) out << "domain: full-linear\n";
}

}  // namespace

DomainPtr read_domain(std::istream& in) {
  const auto lines = read_lines(in);
  const Header h = read_header(lines);
  if (h.kind) {
    if (h.body < lines.size())
      throw ParseError("profile lines are not allowed after a 'domain:' header", lines[h.body].number, 1);
    return declared_domain(h);
  }
  std::vector<Profile> profiles;
  std::map<Profile, std::size_t> first_line;
  for (std::size_t i = h.body; i < lines.size(); ++i) {
    Profile p = read_profile(h, lines[i], lines[i].text, 0);
    if (auto [it, fresh] = first_line.emplace(p, lines[i].number); !fresh)
      throw ParseError("duplicate profile (first given on line " + std::to_string(it->second) + ")",
                       lines[i].number, lines[i].offset + 1);
    profiles.push_back(std::move(p));
  }
  if (profiles.empty()) throw ParseError("the domain lists no profiles", lines.empty() ? 1 : lines.back().number + 1, 1);
  return classify(*h.carrier, *h.voters, std::move(profiles));
}

void write_domain(std::ostream& out, const Domain& domain) {
  write_header(out, domain);
  if (domain.kind() != DomainKind::explicit_set)
    return;
  for (std::size_t k = 0; k < domain.size(); ++k) out << format_profile(domain.profile(k)) << '\n';
}

Swf read_swf(std::istream& in) {
  const auto lines = read_lines(in);
  const Header h = read_header(lines);

  struct Entry {
    Profile p;
    Relation::Bits out;
    std::size_t line;
  };
  std::vector<Entry> entries;
  std::map<Profile, std::size_t> first_line;
  bool weak = true;
  for (std::size_t i = h.body; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const auto arrow = line.text.find("->");
    if (arrow == std::string::npos)
      throw ParseError("expected '<profile> -> <relation>'", line.number, line.offset + line.text.size() + 1);
    Profile p = read_profile(h, line, std::string_view(line.text).substr(0, arrow), 0);
    Relation out(*h.carrier);
    try {
      out = parse_relation(*h.carrier, std::string_view(line.text).substr(arrow + 2));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), line.number, line.offset + arrow + 2 + e.column());
    }
    if (auto [it, fresh] = first_line.emplace(p, line.number); !fresh)
      throw ParseError("duplicate profile (first given on line " + std::to_string(it->second) + ")", line.number,
                       line.offset + 1);
    weak = weak && is_weak_order(out);
    entries.push_back({std::move(p), out.bits(), line.number});
  }
  const std::size_t end_line = lines.empty() ? 1 : lines.back().number + 1;
  if (entries.empty()) throw ParseError("the SWF lists no profiles", end_line, 1);

  DomainPtr domain;
  if (h.kind) {
    domain = declared_domain(h);
  } else {
    std::vector<Profile> profiles;
    for (const auto& e : entries) profiles.push_back(e.p);
    domain = classify(*h.carrier, *h.voters, std::move(profiles));
  }

  std::vector<Relation::Bits> table(domain->size(), 0);
  std::vector<bool> given(domain->size(), false);
  for (const auto& e : entries) {
    const auto index = domain->find(e.p);
    if (!index) throw ParseError("profile is not in the declared domain", e.line, 1);
    table[*index] = e.out;
    given[*index] = true;
  }
  for (std::size_t k = 0; k < given.size(); ++k)
    if (!given[k])
      throw ParseError("no outcome given for profile " + format_profile(domain->profile(k)), h.kind_line, 1);
  return Swf::from_table(std::move(domain), std::move(table),
                         weak ? OutputPolicy::weak_orders : OutputPolicy::any_relation);
}

void write_swf(std::ostream& out, const Swf& swf) {
  const Domain& d = swf.domain();
  write_header(out, d);
  for (std::size_t k = 0; k < d.size(); ++k)
    out << format_profile(d.profile(k)) << " -> " << format_relation(swf.output(k)) << '\n';
}

DomainPtr load_domain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_domain(in);
}

Swf load_swf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_swf(in);
}

void save_swf(const std::string& path, const Swf& swf) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_swf(out, swf);
  if (!out) throw Error("error while writing " + path);
}

}  // namespace arrowkit
