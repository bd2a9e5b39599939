#include "bsl/bs23.hpp"

#include "bsl/tokens.hpp"
#include "bsl/words.hpp"

namespace bsl {

namespace {

// word with k tau letters of alternating signs starting with `sign`,
// separated by b letters: t, t b t^-1, t b t^-1 b t, ...
HnnWord<Bs23Oracle> zigzag_word(const Bs23Oracle& o, int k, int sign) {
  std::vector<HnnLetter<Bs23Oracle>> letters;
  for (int i = 0; i < k; ++i) {
    if (i > 0) letters.push_back(std::int64_t{1});
    letters.push_back(i % 2 == 0 ? sign : -sign);
  }
  return hnn_reduce(o, letters);
}

}  // namespace

std::vector<HnnVertex> bs23_linear_subtree(int n) {
  if (n > 8) fail(ErrorKind::Limit, "linear subtree index exceeds cap");
  Bs23Oracle o;
  std::vector<HnnVertex> out;
  for (int k = -n; k <= n; ++k) {
    if (k == 0) {
      out.push_back(HnnVertex{});
      continue;
    }
    HnnWord<Bs23Oracle> w = zigzag_word(o, std::abs(k), k > 0 ? 1 : -1);
    out.push_back(HnnVertex{w.syllables});
  }
  return out;
}

std::vector<B6Check> verify_b6(int n) {
  if (n > 8) fail(ErrorKind::Limit, "verify_b6 index exceeds cap");
  Bs23Oracle o;
  HnnWord<Bs23Oracle> b6{{}, 6};
  std::vector<B6Check> checks;
  std::vector<HnnVertex> line = bs23_linear_subtree(n);

  for (int k = -n; k <= n; ++k) {
    const HnnVertex& v = line[k + n];
    HnnVertex image = hnn_act(o, b6, v);
    B6Check c;
    c.description = "b^6 fixes line vertex " + std::to_string(k);
    c.expected = vertex_text(v);
    c.got = vertex_text(image);
    c.passed = c.expected == c.got;
    checks.push_back(std::move(c));
  }

  // vertices starting and ending with the same tau power (odd |k|) have the
  // doubled-tau neighbor moved by b^6
  for (int k = -n; k <= n; ++k) {
    if (k == 0 || std::abs(k) % 2 == 0) continue;
    const HnnVertex& v = line[k + n];
    std::vector<HnnSyllable> p = v.prefix;
    p.push_back({0, k > 0 ? 1 : -1});
    HnnVertex neighbor{std::move(p)};
    HnnVertex image = hnn_act(o, b6, neighbor);
    B6Check c;
    c.description = "b^6 moves the doubled-tau neighbor of line vertex " + std::to_string(k);
    c.expected = vertex_text(neighbor);
    c.got = vertex_text(image);
    c.passed = c.expected != c.got;
    checks.push_back(std::move(c));
  }

  // golden forms frozen from the worked computation around index 5
  if (n >= 5) {
    const HnnVertex& v5 = line[5 + n];
    std::vector<HnnSyllable> p = v5.prefix;
    p.push_back({0, 1});
    HnnVertex neighbor{std::move(p)};
    B6Check gold;
    gold.description = "image of the doubled-tau neighbor at index 5";
    gold.expected = "t * b * t^-1 * b * t * b * t^-1 * b * t * b * t <b>";
    gold.got = vertex_text(hnn_act(o, b6, neighbor));
    gold.passed = gold.expected == gold.got;
    checks.push_back(std::move(gold));

    B6Check named;
    named.description = "the doubled-tau neighbor at index 5 prints as expected";
    named.expected = "t * b * t^-1 * b * t * b * t^-1 * b * t * t <b>";
    named.got = vertex_text(neighbor);
    named.passed = named.expected == named.got;
    checks.push_back(std::move(named));
  }
  if (n >= 4) {
    B6Check fixed4;
    fixed4.description = "line vertex 4 prints as expected";
    fixed4.expected = "t * b * t^-1 * b * t * b * t^-1 <b>";
    fixed4.got = vertex_text(line[4 + n]);
    fixed4.passed = fixed4.expected == fixed4.got;
    checks.push_back(std::move(fixed4));
  }
  return checks;
}

}  // namespace bsl
