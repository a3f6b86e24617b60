// Acceptance run: one PASS/FAIL line per criterion.

#include "fsw/cli.hpp"
#include "support/oracles.hpp"
#include "support/random_models.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace fsw;
using fsw_test::Rng;
namespace oracle = fsw_test::oracle;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<Outcome()> body;
};

/// Counts checks and keeps the first failure for the report line.
class Tally {
public:
  void check(bool ok, const std::function<std::string()> &describe) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (first_.empty())
        first_ = describe();
    }
  }
  long checks() const { return checks_; }
  long failures() const { return failures_; }
  bool ok() const { return failures_ == 0; }
  std::string first_failure() const { return first_; }

private:
  long checks_ = 0;
  long failures_ = 0;
  std::string first_;
};

std::string summary(const Tally &t, const std::string &extra) {
  std::ostringstream s;
  s << extra << ", " << t.checks() << " checks";
  if (!t.ok())
    s << ", " << t.failures() << " failed; first: " << t.first_failure();
  return s.str();
}

BundleClass split_on_projective(const Ring &ring, const std::vector<int> &roots) {
  GradedClass total = ring.one();
  for (int a : roots)
    total *= ring.one() + Integer(a) * ring.generator("t");
  return BundleClass::from_total(static_cast<int>(roots.size()), total);
}

Integer coefficient_sum(const GradedClass &c) {
  Integer s = 0;
  for (const auto &[m, v] : c.terms())
    s += v;
  return s;
}

// -- 1 ----------------------------------------------------------------------

Outcome three_routes() {
  Rng rng(1001);
  Tally t;
  int instances = 0, oracle_instances = 0;
  for (; instances < 1000; ++instances) {
    const Ring ring = fsw_test::random_base(rng);
    const KahlerFamilyData d = fsw_test::random_family(ring, rng);
    const int r = d.obstruction_rank();
    for (int m = 0; m <= r; ++m)
      for (int n = 0; n <= d.h0 + 3; ++n) {
        const GradedClass a = gamma_closed(d, m, n).value;
        const GradedClass b = gamma_triple_sum(d, m, n).value;
        const GradedClass c = gamma_pushforward(d, m, n).value;
        t.check(a == b && b == c, [&] {
          return "instance " + std::to_string(instances) + " m=" + std::to_string(m) + " n=" + std::to_string(n);
        });
      }
  }
  // split bundles on CP^N against the dense Leray-Hirsch oracle
  for (; oracle_instances < 200; ++oracle_instances) {
    oracle::SplitFamily f;
    f.top = rng.uniform(1, 3);
    auto roots = [&](int rank) {
      std::vector<int> v;
      for (int i = 0; i < rank; ++i)
        v.push_back(rng.uniform(-3, 3));
      return v;
    };
    f.v0 = roots(rng.uniform(1, 6));
    f.v1 = roots(rng.uniform(0, 4));
    f.v2 = roots(rng.uniform(0, 4));
    f.h20 = roots(rng.uniform(0, 3));
    const Ring ring(RingSpec::projective_space(f.top));
    const KahlerFamilyData d{ring,
                             static_cast<int>(f.v0.size()),
                             static_cast<int>(f.v1.size()),
                             static_cast<int>(f.v2.size()),
                             static_cast<int>(f.h20.size()),
                             split_on_projective(ring, f.v0),
                             split_on_projective(ring, f.v1),
                             split_on_projective(ring, f.v2),
                             split_on_projective(ring, f.h20)};
    for (int m = 0; m <= d.obstruction_rank(); ++m)
      for (int n = 0; n <= d.h0 + 3; ++n)
        for (GammaRoute route : {GammaRoute::Closed, GammaRoute::TripleSum, GammaRoute::Pushforward})
          t.check(coefficient_sum(gamma(d, m, n, route).value) == oracle::gamma(f, m, n), [&] {
            return "oracle instance " + std::to_string(oracle_instances) + " route " +
                   std::string(route_name(route)) + " m=" + std::to_string(m) + " n=" + std::to_string(n);
          });
  }
  return {t.ok(), summary(t, std::to_string(instances) + " random instances + " + std::to_string(oracle_instances) +
                                 " split instances vs dense oracle")};
}

// -- 2 ----------------------------------------------------------------------

Outcome recursion() {
  Rng rng(1002);
  Tally t;
  const int instances = 1000;
  for (int i = 0; i < instances; ++i) {
    const Ring ring = fsw_test::random_base(rng);
    const KahlerFamilyData d = fsw_test::random_family(ring, rng);
    for (int m = 0; m <= d.obstruction_rank(); ++m)
      for (int n = 0; n <= d.h0 + 3; ++n)
        t.check(recursion_residual(d, m, n).is_zero(), [&] {
          return "instance " + std::to_string(i) + " m=" + std::to_string(m) + " n=" + std::to_string(n);
        });
  }
  return {t.ok(), summary(t, std::to_string(instances) + " instances")};
}

// -- 3 ----------------------------------------------------------------------

Outcome point_base() {
  Tally t;
  const Ring point(RingSpec::point());
  int compared = 0, no_contributing_n = 0, rewritten = 0;
  for (int h0 = 1; h0 <= 6; ++h0)
    for (int h1 = 0; h1 <= 4; ++h1)
      for (int h2 = 0; h2 <= 4; ++h2)
        for (int rho = 1; rho <= 3; ++rho) {
          const int chi = h0 - h1 + h2;
          const KahlerFamilyData d = KahlerFamilyData::trivial(point, h0, h1, h2, rho);
          const Integer sw = sw_unparametrised(h0, h1, h2, rho, chi).value;
          const int n_star = h0 - 1 - d.obstruction_rank();
          auto label = [&] {
            return "h=(" + std::to_string(h0) + "," + std::to_string(h1) + "," + std::to_string(h2) +
                   ") rho=" + std::to_string(rho);
          };
          if (n_star >= 0) {
            ++compared;
            t.check(abs(fsw_general(d, n_star).constant_term()) == abs(sw), label);
            for (int n = 0; n <= h0 + 3; ++n)
              if (n != n_star)
                t.check(fsw_general(d, n).is_zero(), label);
          } else {
            ++no_contributing_n;
            for (int n = 0; n <= h0 + 3; ++n)
              t.check(fsw_general(d, n).is_zero(), label);
          }
          if (chi == rho + 1 && h1 - h2 < 0) {
            ++rewritten;
            const Integer lhs = oracle::binomial(h1 - h2, h1 - h2 + rho);
            t.check(lhs == sign_power(h0 - 1) * oracle::binomial(rho - 1, h0 - 1), label);
            t.check(lhs == sw_rewritten_form(h0, rho) && lhs == sw, label);
          }
        }
  return {t.ok(), summary(t, std::to_string(compared) + " cases with a contributing n, " +
                                 std::to_string(no_contributing_n) + " with none (FSW = 0 checked), " +
                                 std::to_string(rewritten) + " rewritten-form cases")};
}

// -- 4 ----------------------------------------------------------------------

Outcome projectivisation() {
  Rng rng(1004);
  Tally t;
  int specs = 0;
  for (int base = 0; base < 3; ++base)
    for (int trial = 0; trial < 25; ++trial) {
      const Ring ring = base == 0   ? Ring(RingSpec::projective_space(1))
                        : base == 1 ? Ring(RingSpec::projective_space(2))
                                    : fsw_test::random_surface(rng);
      for (int k = -1; k <= 3; ++k) {
        ++specs;
        const ProjectivisationSpec spec{ring, fsw_test::random_bundle(ring, 3, rng), k,
                                        BundleClass::line(fsw_test::random_line_class(ring, rng))};
        const KahlerFamilyData d = projectivisation_family_data(spec);
        for (int n = 0; n <= d.h0 + 2; ++n) {
          const GradedClass family = projectivisation_fsw(spec, n);
          auto label = [&] { return "k=" + std::to_string(k) + " n=" + std::to_string(n); };
          t.check(family == fsw_general(d, n), label);
          t.check(family == projectivisation_fsw_expanded(spec, n), label);
        }
      }
    }
  return {t.ok(), summary(t, std::to_string(specs) + " specs over CP1/CP2/surfaces, k in -1..3")};
}

// -- 5 ----------------------------------------------------------------------

Outcome fibre_product() {
  Rng rng(1005);
  Tally t;
  int specs = 0;
  for (int trial = 0; trial < 20; ++trial)
    for (int k = 0; k <= 2; ++k)
      for (int l = 0; l <= 2; ++l) {
        ++specs;
        const Ring ring = trial % 2 == 0 ? Ring(RingSpec::projective_space(rng.uniform(1, 3)))
                                         : fsw_test::random_surface(rng);
        const FibreProductSpec spec{ring,
                                    fsw_test::random_bundle(ring, 2, rng),
                                    fsw_test::random_bundle(ring, 2, rng),
                                    k,
                                    l,
                                    BundleClass::line(fsw_test::random_line_class(ring, rng))};
        const KahlerFamilyData d = fibre_product_family_data(spec);
        auto label = [&] { return "k=" + std::to_string(k) + " l=" + std::to_string(l); };
        t.check(d.h0 == (1 + k) * (1 + l), label);
        for (int n = 0; n <= d.h0 + 2; ++n)
          t.check(fibre_product_fsw(spec, n) == fsw_general(d, n), label);
      }
  return {t.ok(), summary(t, std::to_string(specs) + " specs, k,l in 0..2")};
}

// -- 6 ----------------------------------------------------------------------

Outcome blowup() {
  Rng rng(1006);
  Tally theorem, displays[3];
  int specs = 0, rejected = 0;
  int by_delta[4] = {0, 0, 0, 0};
  for (int mode = 0; mode < 5; ++mode)
    for (int trial = 0; trial < 60; ++trial) {
      const Ring ring = fsw_test::random_surface(rng);
      BlowupSpec s;
      s.ring = ring;
      s.twist = static_cast<BlowupTwist>(mode);
      s.k = s.twist == BlowupTwist::MinusKE ? rng.uniform(1, 3)
            : s.twist == BlowupTwist::PlusKE ? rng.uniform(2, 3)
                                             : *BlowupSpec::implied_k(s.twist);
      s.p0 = rng.uniform(1, 10);
      s.p1 = rng.uniform(0, 3);
      s.p2 = rng.uniform(0, 3);
      s.rho_g = rng.uniform(0, 3);
      s.L1 = fsw_test::random_line_class(ring, rng);
      s.L2 = BundleClass::line(fsw_test::random_line_class(ring, rng));
      s.cotangent = fsw_test::random_bundle(ring, 2, rng);
      s.canonical = rng.coin() ? s.cotangent.c(1) : fsw_test::random_line_class(ring, rng);
      KahlerFamilyData d;
      try {
        d = blowup_family_data(s);
      } catch (const SpecError &) {
        ++rejected; // negative h0 or c(W0) above its rank
        continue;
      }
      ++specs;
      const int r = d.obstruction_rank();
      for (int n = 0; n <= d.h0 + 4; ++n) {
        const int delta = r + n - d.h0 + 1;
        const GradedClass general = fsw_general(d, n);
        auto label = [&] {
          return std::string(twist_name(s.twist)) + " k=" + std::to_string(s.k) + " p=(" + std::to_string(s.p0) +
                 "," + std::to_string(s.p1) + "," + std::to_string(s.p2) + ") rho=" + std::to_string(s.rho_g) +
                 " n=" + std::to_string(n);
        };
        if (delta > 2) {
          ++by_delta[3];
          theorem.check(general.is_zero(), label);
          continue;
        }
        if (delta < 0)
          continue;
        ++by_delta[delta];
        const GradedClass closed = blowup_fsw_delta(s, n);
        theorem.check(closed == general, label);

        std::optional<GradedClass> shown;
        if (s.twist == BlowupTwist::Zero || s.twist == BlowupTwist::PlusE)
          shown = blowup_fsw_trivial_w_display(s.p0, s.p1, s.p2, s.rho_g, s.L1, n);
        else if (s.twist == BlowupTwist::MinusE)
          shown = blowup_fsw_basepoint_free_display(s.p0, s.p1, s.p2, s.rho_g, s.L1, s.L2.c(1), n);
        if (shown)
          displays[delta].check(*shown == closed, [&] { return "display " + label() + " delta=" + std::to_string(delta); });
      }
    }
  std::ostringstream extra;
  extra << specs << " specs (" << rejected << " rejected as inconsistent), delta 0/1/2/>2 cases " << by_delta[0] << "/"
        << by_delta[1] << "/" << by_delta[2] << "/" << by_delta[3] << "; " << summary(theorem, "theorem")
        << "; " << summary(displays[1], "delta=1 displays") << "; " << summary(displays[2], "delta=2 displays");
  const bool displays_ok = displays[0].ok() && displays[1].ok() && displays[2].ok();
  return {theorem.ok() && displays_ok, extra.str()};
}

// -- 7 ----------------------------------------------------------------------

Outcome charclass_kernel() {
  Rng rng(1007);
  Tally t;
  const int cases = 500;
  auto nonpoint = [&] {
    for (;;) {
      Ring r = fsw_test::random_base(rng);
      if (r.backend() != Backend::Point)
        return r;
    }
  };
  for (int i = 0; i < cases; ++i) {
    auto label = [&] { return "case " + std::to_string(i); };
    {
      const Ring ring = fsw_test::random_base(rng);
      const BundleClass e = fsw_test::random_bundle(ring, rng.uniform(0, 6), rng);
      t.check(e.total() * segre_of(e).total() == ring.one(), label);
      t.check(segre_of(e).total() == oracle::inverse_series(e.total()), label);
      const GradedClass ell = fsw_test::random_line_class(ring, rng);
      t.check(tensor_line_segre(e, ell) == segre_of(tensor_line_chern(e, ell)), label);
    }
    {
      // splitting oracle, rank <= 3: explicit roots on the test side
      const Ring ring = nonpoint();
      const int rank = rng.uniform(0, 3);
      std::vector<GradedClass> roots;
      for (int j = 0; j < rank; ++j)
        roots.push_back(fsw_test::random_line_class(ring, rng));
      const BundleClass e = BundleClass::from_total(rank, oracle::total_from_roots(ring, roots));
      const GradedClass ell = fsw_test::random_line_class(ring, rng);
      std::vector<GradedClass> shifted;
      for (const auto &x : roots)
        shifted.push_back(x + ell);
      t.check(tensor_line_chern(e, ell).total() == oracle::total_from_roots(ring, shifted), label);
      const int k = rng.uniform(0, 4);
      const BundleClass s = sym_power(e, k);
      t.check(s.total() == oracle::total_from_roots(ring, oracle::sym_power_roots(ring, roots, k)), label);
      t.check(Integer(s.rank()) == oracle::binomial(rank + k - 1, k), label);
    }
    {
      const Ring ring = fsw_test::random_surface(rng);
      std::vector<GradedClass> cot{fsw_test::random_line_class(ring, rng), fsw_test::random_line_class(ring, rng)};
      const GradedClass ell = fsw_test::random_line_class(ring, rng);
      const int k = rng.uniform(1, 5);
      const BundleClass jet = jet_total_class(BundleClass::from_total(2, oracle::total_from_roots(ring, cot)),
                                              BundleClass::line(ell), k - 1);
      t.check(jet.rank() == k * (k + 1) / 2, label);
      std::vector<GradedClass> roots;
      for (int q = 0; q < k; ++q)
        for (const auto &x : oracle::sym_power_roots(ring, cot, q))
          roots.push_back(x + ell);
      t.check(jet.total() == oracle::total_from_roots(ring, roots), label);
    }
  }
  return {t.ok(), summary(t, std::to_string(cases) + " randomized cases per property")};
}

// -- 8 ----------------------------------------------------------------------

int invoke(std::vector<std::string> args, const std::string &stdin_text, std::string *out_text) {
  args.insert(args.begin(), "fswcalc");
  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int status = cli::run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  if (out_text)
    *out_text = out.str();
  return status;
}

Outcome cli_golden() {
  Tally t;
  for (const std::string name : {"point", "projectivisation_cp1", "blowup_zero"}) {
    const std::string base = std::string(FSW_GOLDEN_DIR) + "/" + name;
    std::ifstream file(base + ".expected", std::ios::binary);
    std::stringstream expected;
    expected << file.rdbuf();
    std::string first, second;
    t.check(invoke({"--spec", base + ".json", "--check"}, "", &first) == cli::kExitOk, [&] { return name + " exit"; });
    invoke({"--spec", base + ".json", "--check"}, "", &second);
    t.check(file.good() && first == expected.str(), [&] { return name + " output differs"; });
    t.check(first == second, [&] { return name + " not byte-stable"; });
  }
  t.check(invoke({}, "{", nullptr) == cli::kExitInputError, [] { return std::string("malformed JSON exit"); });
  t.check(invoke({}, R"({"spec_version":1,"base":{"type":"point"},"n_range":[0,1],"routes":["closed"]})", nullptr) ==
              cli::kExitInputError,
          [] { return std::string("missing family exit"); });
  cli::Report mismatch;
  cli::ReportRow row;
  row.equal = false;
  mismatch.rows.push_back(row);
  t.check(mismatch.exit_code() == cli::kExitMismatch, [] { return std::string("mismatch exit"); });
  return {t.ok(), summary(t, "3 golden files")};
}

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "three-route gamma equivalence", 60, three_routes},
      {2, "gamma recursion relation", 30, recursion},
      {3, "point-base degeneration", 5, point_base},
      {4, "projectivisation specialization", 30, projectivisation},
      {5, "fibre product specialization", 30, fibre_product},
      {6, "universal blowup delta formulas", 60, blowup},
      {7, "characteristic-class kernel", 30, charclass_kernel},
      {8, "CLI golden files and exit codes", 5, cli_golden},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception &e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.budget_seconds;
    const bool pass = outcome.pass && in_time;
    failed += pass ? 0 : 1;
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.title << "  [" << std::fixed
              << std::setprecision(2) << seconds << " s of " << std::setprecision(0) << c.budget_seconds << " s"
              << (in_time ? "" : ", over budget") << "]  " << outcome.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
