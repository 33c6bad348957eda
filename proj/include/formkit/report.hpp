#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace formkit {

/// Thrown for malformed or out-of-range input (bad indices, shape mismatches,
/// unknown names). The CLI maps it to exit code 2.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a form's push and pull tables disagree on a lifting
/// relation that both should decide identically.
class corrupted_form_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Element = std::size_t;

struct Violation {
  std::string law;
  std::string object;    // empty when not tied to an object
  std::string morphism;  // empty when not tied to a morphism
  std::vector<Element> elements;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
  friend bool operator<(const Violation& a, const Violation& b) {
    return std::tie(a.object, a.morphism, a.law, a.elements, a.detail) <
           std::tie(b.object, b.morphism, b.law, b.elements, b.detail);
  }
};

/// A list of law violations plus free-form notes. An empty violation list
/// means every checked law held.
struct Report {
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool ok() const { return violations.empty(); }

  void add(Violation v) { violations.push_back(std::move(v)); }

  void note(std::string text) { notes.push_back(std::move(text)); }

  void merge(Report other) {
    violations.insert(violations.end(),
                      std::make_move_iterator(other.violations.begin()),
                      std::make_move_iterator(other.violations.end()));
    notes.insert(notes.end(), std::make_move_iterator(other.notes.begin()),
                 std::make_move_iterator(other.notes.end()));
  }

  std::size_t count(std::string_view law) const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(),
                      [&](const Violation& v) { return v.law == law; }));
  }

  bool has(std::string_view law) const { return count(law) != 0; }

  /// Orders violations by object, then morphism, then law and elements.
  void sort() { std::stable_sort(violations.begin(), violations.end()); }
};

}  // namespace formkit
