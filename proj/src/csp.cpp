#include "arrowkit/csp.hpp"

#include <algorithm>
#include <bit>

#include "arrowkit/error.hpp"

namespace arrowkit {

std::size_t Csp::add_variable(std::size_t domain_size) {
  if (domain_size == 0 || domain_size > kMaxDomain) throw InvalidArgument("variable domain size out of range");
  domains_.push_back(domain_size == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << domain_size) - 1);
  forward_.emplace_back();
  final_.emplace_back();
  return domains_.size() - 1;
}

void Csp::restrict_domain(std::size_t var, std::uint64_t allowed) { domains_.at(var) &= allowed; }

void Csp::add_constraint(std::vector<std::size_t> scope, Predicate predicate) {
  if (scope.empty()) throw InvalidArgument("constraint with empty scope");
  for (auto v : scope)
    if (v >= domains_.size()) throw InvalidArgument("constraint mentions an unknown variable");
  Constraint c{std::move(scope), {}, std::move(predicate)};
  c.distinct = c.scope;
  std::sort(c.distinct.begin(), c.distinct.end());
  c.distinct.erase(std::unique(c.distinct.begin(), c.distinct.end()), c.distinct.end());

  if (c.distinct.size() == 1) {
    // Unary: filter the domain once.
    const std::size_t v = c.distinct[0];
    std::vector<Value> buffer(c.scope.size());
    std::uint64_t keep = 0;
    for (std::uint64_t rest = domains_[v]; rest; rest &= rest - 1) {
      const auto value = static_cast<Value>(std::countr_zero(rest));
      std::fill(buffer.begin(), buffer.end(), value);
      if (c.predicate(buffer)) keep |= std::uint64_t{1} << value;
    }
    domains_[v] = keep;
    return;
  }
  const std::size_t index = constraints_.size();
  forward_[c.distinct[c.distinct.size() - 2]].push_back(index);
  final_[c.distinct.back()].push_back(index);
  constraints_.push_back(std::move(c));
}

bool Csp::test(const Constraint& c, std::vector<Value>& buffer, const std::vector<Value>& assignment) const {
  buffer.resize(c.scope.size());
  for (std::size_t i = 0; i < c.scope.size(); ++i) buffer[i] = assignment[c.scope[i]];
  return c.predicate(buffer);
}

bool Csp::search(std::size_t var, std::vector<std::uint64_t>& domains, std::vector<Value>& assignment,
                 std::uint64_t& found, const Visitor& visitor) const {
  if (var == domains.size()) {
    ++found;
    return visitor(assignment);
  }
  std::vector<Value> buffer;
  for (std::uint64_t rest = domains[var]; rest; rest &= rest - 1) {
    const auto value = static_cast<Value>(std::countr_zero(rest));
    assignment[var] = value;

    bool ok = true;
    for (auto ci : final_[var])
      if (!test(constraints_[ci], buffer, assignment)) {
        ok = false;
        break;
      }
    if (!ok) continue;

    // Forward checking: prune the one remaining variable of each constraint.
    std::vector<std::pair<std::size_t, std::uint64_t>> saved;
    for (auto ci : forward_[var]) {
      const Constraint& c = constraints_[ci];
      const std::size_t last = c.distinct.back();
      std::uint64_t keep = 0;
      for (std::uint64_t cand = domains[last]; cand; cand &= cand - 1) {
        assignment[last] = static_cast<Value>(std::countr_zero(cand));
        if (test(c, buffer, assignment)) keep |= cand & -cand;
      }
      if (keep != domains[last]) {
        saved.emplace_back(last, domains[last]);
        domains[last] = keep;
      }
      if (keep == 0) {
        ok = false;
        break;
      }
    }
    bool go_on = true;
    if (ok) go_on = search(var + 1, domains, assignment, found, visitor);
    for (auto it = saved.rbegin(); it != saved.rend(); ++it) domains[it->first] = it->second;
    if (!go_on) return false;
  }
  return true;
}

std::uint64_t Csp::solve(const Visitor& visitor) const {
  std::vector<std::uint64_t> domains = domains_;
  std::vector<Value> assignment(domains.size(), 0);
  std::uint64_t found = 0;
  for (auto d : domains)
    if (d == 0) return 0;
  search(0, domains, assignment, found, visitor);
  return found;
}

std::uint64_t Csp::count() const {
  return solve([](std::span<const Value>) { return true; });
}

}  // namespace arrowkit
