#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace arrowkit {

/// A finite-domain constraint problem solved by backtracking with forward
/// checking. Variables are assigned in index order and values in increasing
/// order, so solutions arrive in lexicographic order.
class Csp {
 public:
  using Value = std::uint8_t;
  using Predicate = std::function<bool(std::span<const Value>)>;
  /// Return false to stop the search.
  using Visitor = std::function<bool(std::span<const Value>)>;

  static constexpr std::size_t kMaxDomain = 64;

  /// Adds a variable ranging over 0..domain_size-1 and returns its index.
  std::size_t add_variable(std::size_t domain_size);
  /// Intersects the variable's domain with `allowed` (bit v = value v).
  void restrict_domain(std::size_t var, std::uint64_t allowed);
  /// The predicate sees the values of `scope` in the given order; a variable
  /// may appear in the scope more than once.
  void add_constraint(std::vector<std::size_t> scope, Predicate predicate);

  std::size_t variables() const noexcept { return domains_.size(); }

  /// Visits every solution; returns the number visited.
  std::uint64_t solve(const Visitor& visitor) const;
  std::uint64_t count() const;

 private:
  struct Constraint {
    std::vector<std::size_t> scope;
    std::vector<std::size_t> distinct;  // sorted
    Predicate predicate;
  };

  bool test(const Constraint& c, std::vector<Value>& buffer, const std::vector<Value>& assignment) const;
  bool search(std::size_t var, std::vector<std::uint64_t>& domains, std::vector<Value>& assignment,
              std::uint64_t& found, const Visitor& visitor) const;

  std::vector<std::uint64_t> domains_;
  std::vector<Constraint> constraints_;
  // Constraints whose second-to-last distinct variable is v (forward checks)
  // and those whose last distinct variable is v (final checks).
  std::vector<std::vector<std::size_t>> forward_;
  std::vector<std::vector<std::size_t>> final_;
};

}  // namespace arrowkit
