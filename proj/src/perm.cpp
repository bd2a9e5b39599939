#include "bsl/perm.hpp"

#include <numeric>
#include <sstream>

#include "bsl/error.hpp"

namespace bsl {

Perm::Perm(int n) : img_(n) { std::iota(img_.begin(), img_.end(), 0); }

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (int v : img_) {
    if (v < 0 || v >= degree() || seen[v]) fail(ErrorKind::Domain, "images are not a bijection");
    seen[v] = 1;
  }
}

bool Perm::is_identity() const {
  for (int k = 0; k < degree(); ++k)
    if (img_[k] != k) return false;
  return true;
}

Perm Perm::operator*(const Perm& other) const {
  if (degree() != other.degree()) fail(ErrorKind::Domain, "permutation degree mismatch");
  std::vector<int> img(img_.size());
  for (int k = 0; k < degree(); ++k) img[k] = img_[other.img_[k]];
  Perm p;
  p.img_ = std::move(img);
  return p;
}

Perm Perm::inverse() const {
  std::vector<int> img(img_.size());
  for (int k = 0; k < degree(); ++k) img[img_[k]] = k;
  Perm p;
  p.img_ = std::move(img);
  return p;
}

Perm Perm::from_cycles(const std::string& text, int n) {
  Perm p(n);
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos == text.size()) fail(ErrorKind::Parse, "empty permutation text");
  while (pos < text.size()) {
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != '(') fail(ErrorKind::Parse, "expected '(' in cycle notation at position " + std::to_string(pos));
    ++pos;
    std::vector<int> cycle;
    for (;;) {
      skip_ws();
      if (pos == text.size()) fail(ErrorKind::Parse, "unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start) fail(ErrorKind::Parse, "expected point index at position " + std::to_string(pos));
      int v = std::stoi(text.substr(start, pos - start));
      if (v < 0 || v >= n) fail(ErrorKind::Parse, "point " + std::to_string(v) + " outside domain of size " + std::to_string(n));
      cycle.push_back(v);
    }
    for (size_t k = 0; k + 1 < cycle.size(); ++k) {
      if (p.img_[cycle[k]] != cycle[k]) fail(ErrorKind::Parse, "point repeated across cycles");
      p.img_[cycle[k]] = cycle[k + 1];
    }
    if (cycle.size() >= 2) {
      if (p.img_[cycle.back()] != cycle.back()) fail(ErrorKind::Parse, "point repeated across cycles");
      p.img_[cycle.back()] = cycle.front();
    }
  }
  // re-validate: distinct cycles may still collide
  return Perm(p.img_);
}

std::string Perm::cycles() const {
  std::ostringstream out;
  std::vector<char> seen(img_.size(), 0);
  bool any = false;
  for (int start = 0; start < degree(); ++start) {
    if (seen[start] || img_[start] == start) continue;
    any = true;
    out << '(';
    int k = start;
    bool first = true;
    do {
      if (!first) out << ' ';
      out << k;
      seen[k] = 1;
      k = img_[k];
      first = false;
    } while (k != start);
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

}  // namespace bsl
