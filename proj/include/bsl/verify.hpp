#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bsl/amalgam.hpp"
#include "bsl/hnn.hpp"

namespace bsl {

struct SuiteResult {
  std::string name;
  long long cases = 0;
  long long failures = 0;
  std::vector<std::string> failure_notes;  // capped at a handful
  bool passed() const { return failures == 0 && cases > 0; }

  void pass() { ++cases; }
  void fail(const std::string& note) {
    ++cases;
    ++failures;
    if (failure_notes.size() < 8) failure_notes.push_back(note);
  }
  void check(bool ok, const char* tag) {
    if (ok)
      pass();
    else
      fail(tag);
  }
};

// Exhaustive enumeration helpers (callback style; portrait spaces get large).
void for_each_q_portrait(const AmalgamFamily& fam, int side, int depth,
                         const std::function<void(const Portrait&)>& fn);
void for_each_h_portrait(const AmalgamFamily& fam, int depth,
                         const std::function<void(const Portrait&)>& fn);
void for_each_hnn_portrait(const HnnFamily& fam, int depth,
                           const std::function<void(const HnnPortrait&)>& fn);
std::vector<std::vector<int>> amalgam_paths(const AmalgamFamily& fam, int side, int max_len);
std::vector<std::vector<HnnStep>> hnn_paths(const HnnFamily& fam, int max_len);

// Relation suites (portrait identities, exhaustive over bounded paths).
SuiteResult verify_relations_amalgam(const AmalgamFamily& fam, int max_path = 3);
SuiteResult verify_relations_hnn(const HnnFamily& fam, int max_path = 3);

// Number of portraits the exhaustive sweeps would enumerate (saturating).
long long h_portrait_count(const AmalgamFamily& fam, int depth);
long long hnn_portrait_count(const HnnFamily& fam, int depth);

// Quasi-kernel membership vs. the conjugation oracles. Exactness needs
// conjugator length depth+1 on both sides of the seam (see KEpsOracle).
SuiteResult verify_quasikernels_amalgam(const AmalgamFamily& fam, int depth = 2, int max_n = 3);
SuiteResult verify_quasikernels_hnn(const HnnFamily& fam, int depth = 2, int max_l = 3);
// Sampled variants for instances whose portrait spaces are too large to sweep.
SuiteResult verify_quasikernels_amalgam_sampled(const AmalgamFamily& fam, int samples, int depth = 2,
                                                int max_n = 3, std::uint64_t seed = 0);
SuiteResult verify_quasikernels_hnn_sampled(const HnnFamily& fam, int samples, int depth = 2,
                                            int max_l = 3, std::uint64_t seed = 0);

// Homomorphism well-definedness plus kernel-generator samples.
SuiteResult verify_homomorphisms_amalgam(const AmalgamFamily& fam, int pairs = 500,
                                         std::uint64_t seed = 0);
SuiteResult verify_homomorphisms_hnn(const HnnFamily& fam, int pairs = 500, std::uint64_t seed = 0);

// Structural equality == equality of radius-5 ball actions.
SuiteResult verify_faithfulness_amalgam(const AmalgamFamily& fam, int pairs = 200,
                                        int adversarial = 50, std::uint64_t seed = 0);
SuiteResult verify_faithfulness_hnn(const HnnFamily& fam, int pairs = 200, int adversarial = 50,
                                    std::uint64_t seed = 0);

// classify vs. exhaustive fixed-point search; includes a transverse pair.
SuiteResult verify_classification_amalgam(const AmalgamFamily& fam, int max_syllables = 3);
SuiteResult verify_classification_hnn(const HnnFamily& fam, int max_syllables = 3);

// Bounded finitely-fledged witnesses for short elliptic words.
SuiteResult verify_fledge_amalgam(const AmalgamFamily& fam);
SuiteResult verify_fledge_hnn(const HnnFamily& fam);

// Equivariance of the delta map on random conjugate pairs.
SuiteResult verify_delta_amalgam(const AmalgamFamily& fam, int pairs = 100, std::uint64_t seed = 0);
SuiteResult verify_delta_hnn(const HnnFamily& fam, int pairs = 100, std::uint64_t seed = 0);

// Criterion-report truth tables.
SuiteResult verify_reports_amalgam(const AmalgamFamily& fam);
SuiteResult verify_reports_hnn(const HnnFamily& fam);

// BS(2,3): golden replays plus the growing fledge witness for b^6.
SuiteResult verify_bs23_suite();

// Deliberately failing fixture for exit-code tests.
SuiteResult verify_selftest_fail();

}  // namespace bsl
