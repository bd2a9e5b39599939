// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Instances: the Sym(3)/Sym(3) amalgam and the Sym(2)/Sym(2) and
// Sym(3)/Sym(3) HNN families, plus BS(2,3).

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "bsl/amalgam.hpp"
#include "bsl/hnn.hpp"
#include "bsl/verify.hpp"

using namespace bsl;

namespace {

struct Criterion {
  int number = 0;
  std::string name;
  std::vector<SuiteResult> suites;
  bool extra_ok = true;
  std::string extra_note;

  bool passed() const {
    if (!extra_ok) return false;
    for (const SuiteResult& s : suites)
      if (!s.passed()) return false;
    return !suites.empty() || extra_ok;
  }
};

void print_criterion(const Criterion& c) {
  long long cases = 0, failures = 0;
  for (const SuiteResult& s : c.suites) {
    cases += s.cases;
    failures += s.failures;
  }
  std::printf("criterion %d %-28s %s  (%lld cases, %lld failures%s)\n", c.number, c.name.c_str(),
              c.passed() ? "PASS" : "FAIL", cases, failures,
              c.extra_note.empty() ? "" : (", " + c.extra_note).c_str());
  for (const SuiteResult& s : c.suites)
    for (const std::string& note : s.failure_notes) std::printf("    [%s] %s\n", s.name.c_str(), note.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  PermGroup sym2(2, 0, {Perm::from_cycles("(0 1)", 2)}, "sym2");
  PermGroup sym3(3, 0, {Perm::from_cycles("(0 1 2)", 3), Perm::from_cycles("(0 1)", 3)}, "sym3");
  AmalgamFamily amal(sym3, sym3);
  HnnFamily hnn2(sym2, sym2);
  HnnFamily hnn3(sym3, sym3);

  std::vector<Criterion> criteria;

  {
    Criterion c;
    c.number = 1;
    c.name = "relation-suites";
    auto start = std::chrono::steady_clock::now();
    c.suites.push_back(verify_relations_amalgam(amal, 3));
    c.suites.push_back(verify_relations_hnn(hnn2, 3));
    c.suites.push_back(verify_relations_hnn(hnn3, 3));
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.extra_ok = secs < 120.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1fs of 120s budget", secs);
    c.extra_note = buf;
    criteria.push_back(std::move(c));
    print_criterion(criteria.back());
  }
  {
    // The intersection oracle for portraits of depth d stabilizes at
    // conjugator length d+1, matching the amalgam's n <= 3 pairing; the
    // depth-1 run keeps the two-syllable bound where it is already exact.
    Criterion c;
    c.number = 2;
    c.name = "quasi-kernel-oracles";
    c.suites.push_back(verify_quasikernels_amalgam(amal, 2, 3));
    c.suites.push_back(verify_quasikernels_hnn(hnn2, 2, 3));
    c.suites.push_back(verify_quasikernels_hnn(hnn2, 1, 2));
    c.suites.push_back(verify_quasikernels_hnn_sampled(hnn3, 300, 2, 3, 0));
    c.extra_note = "conjugator bounds depth+1";
    criteria.push_back(std::move(c));
    print_criterion(criteria.back());
  }
  {
    Criterion c;
    c.number = 3;
    c.name = "faithfulness";
    c.suites.push_back(verify_faithfulness_amalgam(amal, 200, 50, 0));
    c.suites.push_back(verify_faithfulness_hnn(hnn2, 200, 50, 0));
    criteria.push_back(std::move(c));
    print_criterion(criteria.back());
  }
  {
    Criterion c;
    c.number = 4;
    c.name = "homomorphisms";
    c.suites.push_back(verify_homomorphisms_amalgam(amal, 500, 0));
    c.suites.push_back(verify_homomorphisms_hnn(hnn2, 500, 0));
    c.suites.push_back(verify_homomorphisms_hnn(hnn3, 500, 0));
    criteria.push_back(std::move(c));
    print_criterion(criteria.back());
  }
  {
    Criterion c;
    c.number = 5;
    c.name = "bs23-golden";
    c.suites.push_back(verify_bs23_suite());
    criteria.push_back(std::move(c));
    print_criterion(criteria.back());
  }
  {
    Criterion c;
    c.number = 6;
    c.name = "finitely-fledged-witnesses";
    c.suites.push_back(verify_fledge_amalgam(amal));
    c.suites.push_back(verify_fledge_hnn(hnn2));
    criteria.push_back(std::move(c));
    print_criterion(criteria.back());
  }
  {
    Criterion c;
    c.number = 7;
    c.name = "classification";
    c.suites.push_back(verify_classification_amalgam(amal, 3));
    c.suites.push_back(verify_classification_hnn(hnn2, 3));
    criteria.push_back(std::move(c));
    print_criterion(criteria.back());
  }
  {
    Criterion c;
    c.number = 8;
    c.name = "delta-equivariance";
    c.suites.push_back(verify_delta_amalgam(amal, 100, 0));
    c.suites.push_back(verify_delta_hnn(hnn2, 100, 0));
    criteria.push_back(std::move(c));
    print_criterion(criteria.back());
  }
  {
    Criterion c;
    c.number = 9;
    c.name = "criterion-reports";
    c.suites.push_back(verify_reports_amalgam(amal));
    c.suites.push_back(verify_reports_hnn(hnn2));
    c.suites.push_back(verify_reports_hnn(hnn3));
    criteria.push_back(std::move(c));
    print_criterion(criteria.back());
  }

  bool all = true;
  for (const Criterion& c : criteria) all = all && c.passed();
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
