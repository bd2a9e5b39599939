#pragma once

#include <compare>
#include <string>
#include <vector>

namespace bsl {

// Permutation of {0, ..., n-1}. img_[k] is the image of k.
// Composition is (a * b)(x) = a(b(x)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(int n);                    // identity on n points
  explicit Perm(std::vector<int> images);  // validates bijection

  // Cycle notation, e.g. "(0 1 2)(3 4)"; "()" is the identity.
  static Perm from_cycles(const std::string& text, int n);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int k) const { return img_[k]; }
  bool is_identity() const;
  bool fixes(int k) const { return img_[k] == k; }

  Perm operator*(const Perm& other) const;
  Perm inverse() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

  std::string cycles() const;  // canonical cycle text, "()" for identity
  const std::vector<int>& images() const { return img_; }

 private:
  std::vector<int> img_;
};

}  // namespace bsl
