#include "arrowkit/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <ostream>

#include "arrowkit/decisive.hpp"
#include "arrowkit/error.hpp"
#include "arrowkit/factorization.hpp"
#include "arrowkit/format.hpp"
#include "arrowkit/io.hpp"
#include "arrowkit/naturality.hpp"
#include "arrowkit/search.hpp"

namespace arrowkit::cli {

namespace {

/// Unreadable or malformed input file.
class InputError : public Error {
 public:
  using Error::Error;
};

Swf load(const std::string& path) {
  try {
    return load_swf(path);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + e.what());
  } catch (const InvalidArgument& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string pair_text(const AlternativeSet& carrier, std::size_t a, std::size_t b) {
  return "(" + carrier.label(a) + "," + carrier.label(b) + ")";
}

std::string verdict(bool ok) { return ok ? "ok" : "FAIL"; }

int cmd_enumerate(std::size_t n, const std::string& kind, bool list, std::ostream& out) {
  const AlternativeSet carrier = AlternativeSet::standard(n);
  const auto orders = kind == "weak" ? enumerate_weak_orders(carrier) : enumerate_linear_orders(carrier);
  out << orders.size() << '\n';
  if (list)
    for (const auto& r : orders) out << format_chain(r) << '\n';
  return kOk;
}

int cmd_check(const std::string& path, std::ostream& out) {
  const Swf swf = load(path);
  const Domain& d = swf.domain();
  const AlternativeSet& carrier = swf.carrier();
  bool ok = true;

  if (carrier.size() < 3) {
    out << "UD: n/a (fewer than 3 alternatives)\n";
  } else {
    const UdReport weak = check_UD(d);
    if (weak.holds) {
      out << "UD: ok\n";
    } else {
      const UdReport report = d.all_linear() ? check_UD_linear(d) : weak;
      if (report.holds) {
        out << "UD: ok (linear ballots)\n";
      } else {
        ok = false;
        out << "UD: FAIL subset=" << report.subset->to_string() << " missing=" << format_profile(*report.missing)
            << '\n';
      }
    }
  }

  const IiaReport iia = check_IIA(swf);
  const ParetoReport p = check_pareto(swf);
  const ParetoReport wp = check_weak_pareto(swf);
  const auto dictator = find_dictator(swf);
  out << "IIA: " << verdict(iia.holds) << "  P: " << verdict(p.holds) << "  WP: " << verdict(wp.holds)
      << "  D: " << (dictator ? "dictator=" + std::to_string(*dictator) : std::string("none")) << '\n';
  if (iia.witness) {
    const auto& w = *iia.witness;
    out << "IIA witness: pair=" << pair_text(carrier, w.a, w.b) << " p=" << format_profile(w.p) << " -> "
        << format_relation(swf(w.p)) << " q=" << format_profile(w.q) << " -> " << format_relation(swf(w.q)) << '\n';
  }
  if (p.witness)
    out << "P witness: pair=" << pair_text(carrier, p.witness->a, p.witness->b) << " p=" << format_profile(p.witness->p)
        << " -> " << format_relation(swf(p.witness->p)) << '\n';
  if (wp.witness)
    out << "WP witness: pair=" << pair_text(carrier, wp.witness->a, wp.witness->b)
        << " p=" << format_profile(wp.witness->p) << " -> " << format_relation(swf(wp.witness->p)) << '\n';
  ok = ok && iia.holds && p.holds && wp.holds && dictator.has_value();
  return ok ? kOk : kCheckFailed;
}

int cmd_decisive(const std::string& path, std::ostream& out) {
  const Swf swf = load(path);
  const AlternativeSet& carrier = swf.carrier();
  const std::size_t n = carrier.size();
  const DecisivenessTable table(swf);
  for (std::uint32_t u = 0; u < (std::uint32_t{1} << table.voters()); ++u) {
    std::string d_list, e_list;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const std::string pair = carrier.label(a) + ">" + carrier.label(b);
        if (table.decisive({u}, a, b)) d_list += " " + pair + (table.vacuous({u}, a, b) ? "*" : "");
        if (table.strongly_decisive({u}, a, b)) e_list += " " + pair;
      }
    out << "U=" << to_string(Coalition{u}) << " D:" << (d_list.empty() ? " -" : d_list)
        << " E:" << (e_list.empty() ? " -" : e_list) << '\n';
  }
  const CoalitionFamily family = decisive_family(swf);
  const UltrafilterReport report = check_ultrafilter(family);
  out << "decisive family: " << to_string(family) << '\n' << report.to_text();
  return report.holds() ? kOk : kCheckFailed;
}

int cmd_factorize(const std::string& path, std::ostream& out) {
  const Swf swf = load(path);
  const FactorizationReport report = check_factorization(swf);
  out << report.to_text();
  return report.homomorphism && report.square_commutes ? kOk : kCheckFailed;
}

int cmd_naturality(const std::string& path, bool injections, std::ostream& out) {
  const Swf swf = load(path);
  std::optional<SwfFamily> family;
  try {
    family = extend_from_top(swf);
  } catch (const IllDefined& e) {
    out << "extension: FAIL " << e.what() << '\n';
    return kCheckFailed;
  } catch (const NoLift& e) {
    out << "extension: FAIL " << e.what() << '\n';
    return kCheckFailed;
  }
  out << "extension: ok\n";
  const NaturalityReport inclusions = check_naturality_inclusions(*family);
  out << inclusions.to_text() << "inclusions: " << verdict(inclusions.holds()) << '\n';
  bool ok = inclusions.holds();
  if (injections) {
    const NaturalityReport report = check_naturality_injections(*family);
    out << report.to_text() << "injections: " << verdict(report.holds()) << '\n';
    ok = ok && report.holds();
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_verify(const SearchConfig& config, const std::string& emit, std::ostream& out, std::ostream& err) {
  ArrowSearchResult result;
  SearchReport report;
  try {
    report = verify_arrow(config, &result);
  } catch (const AssertionFailed& e) {
    out << "assertion failed: " << e.what() << '\n';
    return kCheckFailed;
  }
  out << report.to_text();
  char seconds[32];
  std::snprintf(seconds, sizeof seconds, "%.3f", report.seconds);
  err << "elapsed: " << seconds << "s\n";
  if (!emit.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(emit, ec);
    if (ec) throw InputError("cannot create " + emit + ": " + ec.message());
    for (std::size_t i = 0; i < result.survivors.size(); ++i)
      save_swf((std::filesystem::path(emit) / ("survivor_" + std::to_string(i) + ".swf")).string(),
               result.survivors[i]);
  }
  return kOk;
}

int cmd_nat_trans(std::size_t arity, std::size_t max_size, std::ostream& out) {
  const NatTransResult result = enumerate_natural_transformations(arity, max_size);
  out << result.to_text();
  std::vector<bool> seen(arity, false);
  bool ok = result.survivors.size() == arity;
  for (const auto& s : result.survivors) {
    const auto i = s.projection_index();
    if (!i || seen[*i] || !s.fixes_diagonal()) {
      ok = false;
      continue;
    }
    seen[*i] = true;
  }
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exhaustive checks of Arrow's theorem and its algebraic and categorical forms", "arrowkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::size_t n = 3;
  std::string kind = "weak";
  bool list = false;
  auto* enumerate = app.add_subcommand("enumerate", "Count (and optionally list) weak or linear orders");
  enumerate->add_option("--n", n, "Number of alternatives")->required()->check(CLI::Range(1, 8));
  enumerate->add_option("--kind", kind, "weak or linear")->check(CLI::IsMember({"weak", "linear"}));
  enumerate->add_flag("--list", list, "Print every order in canonical order");

  std::string swf_path;
  auto* check = app.add_subcommand("check", "Report UD, IIA, P, WP and D for an SWF file");
  check->add_option("--swf", swf_path, "SWF file")->required();
  auto* decisive = app.add_subcommand("decisive", "Decisive coalitions and the ultrafilter axioms");
  decisive->add_option("--swf", swf_path, "SWF file")->required();
  auto* factorize = app.add_subcommand("factorize", "Boolean homomorphism h and the factorization square");
  factorize->add_option("--swf", swf_path, "SWF file")->required();
  bool injections = false;
  auto* naturality = app.add_subcommand("naturality", "Naturality squares of the family extended from an SWF");
  naturality->add_option("--swf", swf_path, "SWF file")->required();
  naturality->add_flag("--injections", injections, "Also check every injection on linear profiles");

  SearchConfig config;
  std::string domain = "linear";
  std::string emit;
  auto* verify = app.add_subcommand("verify-arrow", "Enumerate every IIA+P SWF and run the full pipeline");
  verify->add_option("--alternatives", config.alternatives, "Number of alternatives")->check(CLI::Range(2, 3));
  verify->add_option("--voters", config.voters, "Number of voters")->check(CLI::Range(1, 4));
  verify->add_option("--domain", domain, "linear or weak")->check(CLI::IsMember({"linear", "weak"}));
  verify->add_option("--jobs", config.jobs, "Worker threads (0 = hardware threads)")->check(CLI::Range(0, 256));
  verify->add_option("--emit-survivors", emit, "Directory receiving one SWF file per survivor");

  std::size_t arity = 2;
  std::size_t max_size = 3;
  auto* nat_trans = app.add_subcommand("nat-trans", "Natural transformations X^k -> X on small sets");
  nat_trans->add_option("--arity", arity, "k")->required()->check(CLI::Range(1, 3));
  nat_trans->add_option("--max-size", max_size, "Largest set size")->required()->check(CLI::Range(1, 3));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageOrInput;
  }

  try {
    if (*enumerate) return cmd_enumerate(n, kind, list, out);
    if (*check) return cmd_check(swf_path, out);
    if (*decisive) return cmd_decisive(swf_path, out);
    if (*factorize) return cmd_factorize(swf_path, out);
    if (*naturality) return cmd_naturality(swf_path, injections, out);
    if (*verify) {
      config.kind = domain == "weak" ? BallotKind::weak : BallotKind::linear;
      return cmd_verify(config, emit, out, err);
    }
    if (*nat_trans) return cmd_nat_trans(arity, max_size, out);
  } catch (const HypothesesNotMet& e) {
    out << e.what() << '\n';
    return kHypothesesNotMet;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrInput;
  }
  return kUsageOrInput;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"arrowkit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace arrowkit::cli
