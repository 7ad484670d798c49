// Acceptance gate: one line per criterion, nonzero exit on any failure.
#include <cmath>
#include <cstdio>
#include <string>

#include "symind/cli_reports.hpp"

using namespace symind;

namespace {

int g_failures = 0;

void report(int num, const std::string& label, bool pass, const std::string& detail = "") {
  std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", num, label.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

SuiteReport run(const std::string& name, int samples) {
  SuiteConfig cfg;
  cfg.suite = name;
  cfg.samples = samples;
  return run_suite(cfg);
}

std::string verdict(const SuiteReport& r) {
  int fails = 0;
  for (const auto& c : r.checks)
    if (c.status == "fail") ++fails;
  if (fails == 0) return std::to_string(r.checks.size()) + " checks";
  std::string out;
  for (const auto& c : r.checks)
    if (c.status == "fail") out += c.name + " ";
  return std::to_string(fails) + " failed: " + out;
}

// ---- criterion 3: moment image of the induced spaces vs the orbit charts ----

struct HausdorffResult {
  double dist = 1e30;
  bool injective = false;
};

HausdorffResult moment_image_vs_X() {
  HausdorffResult out;
  InducedSpace ind = induce(g_group(), h_in_g(), point_space(h_group(), c_check_h()));
  HamiltonianSpace x = orbit_X();
  double worst = 0;
  int got = 0;
  for (int i = 0; got < 500 && i < 2600; ++i) {
    auto s = ind.sampler(42, i);
    if (!s) continue;
    ++got;
    Vec c = ind.moment(*s).coeffs;  // (p, Re q, Im q, -t)
    Vec chart(2);
    chart << c[0], std::atan2(c[2], c[1]);
    worst = std::max(worst, (moment_coeffs(x, chart) - c).cwiseAbs().maxCoeff());
  }
  if (got < 500) return out;
  Rng rng(91);
  auto witness = [](double p, double theta) {
    Vec n(8);
    n << theta, 0, 0, 0, p, 1, 0, -1;  // q = exp(theta E_a), mu on the level set
    return n;
  };
  for (int i = 0; i < 500; ++i) {
    double p = rng.uniform(-10, 10), theta = rng.uniform(0, 6.283185307179586);
    Vec chart(2);
    chart << p, theta;
    Vec n = witness(p, theta);
    if (ind.psi(n).cwiseAbs().maxCoeff() > 1e-9) return out;
    worst = std::max(worst, (ind.moment(n).coeffs - moment_coeffs(x, chart)).cwiseAbs().maxCoeff());
  }
  out.dist = worst;

  // equal momentum at budget implies equivalent representatives
  out.injective = true;
  for (int i = 0; i < 12 && out.injective; ++i) {
    auto s = ind.sampler(42, static_cast<std::uint64_t>(i));
    if (!s) continue;
    Vec c = ind.moment(*s).coeffs;
    Vec n2 = witness(c[0], std::atan2(c[2], c[1]));
    if (!ind.equivalent(n2, *s)) out.injective = false;
  }
  return out;
}

HausdorffResult moment_image_vs_Xprime() {
  HausdorffResult out;
  InducedSpace ind = induce(gprime_group(), hprime_in_gprime(),
                            point_space(hprime_group(), c_check_hprime()));
  HamiltonianSpace xp = orbit_Xprime();
  double worst = 0;
  int got = 0;
  for (int i = 0; got < 500 && i < 2600; ++i) {
    auto s = ind.sampler(42, i);
    if (!s) continue;
    ++got;
    Vec c = ind.moment(*s).coeffs;  // (p, Re q, Im q, -s, -t)
    Vec chart(2);
    chart << c[0], -c[3];
    worst = std::max(worst, (moment_coeffs(xp, chart) - c).cwiseAbs().maxCoeff());
  }
  if (got < 500) return out;
  Rng rng(92);
  auto witness = [](double p, double s) {
    Vec n(10);
    n << s, 0, 0, p, 0, /*mu = c-check*/ 0, 1, 0, 0, -1;
    return n;
  };
  for (int i = 0; i < 500; ++i) {
    double p = rng.uniform(-10, 10), s = rng.uniform(-10, 10);
    Vec chart(2);
    chart << p, s;
    Vec n = witness(p, s);
    if (ind.psi(n).cwiseAbs().maxCoeff() > 1e-9) return out;
    worst =
        std::max(worst, (ind.moment(n).coeffs - moment_coeffs(xp, chart)).cwiseAbs().maxCoeff());
  }
  out.dist = worst;

  out.injective = true;
  for (int i = 0; i < 6 && out.injective; ++i) {
    auto s = ind.sampler(42, static_cast<std::uint64_t>(i));
    if (!s) continue;
    Vec c = ind.moment(*s).coeffs;
    Vec n2 = witness(c[0], -c[3]);
    if (!ind.equivalent(n2, *s)) out.injective = false;
  }
  return out;
}

}  // namespace

int main() {
  {
    SuiteReport r = run("cardinal", 100);
    report(1, "cardinal momentum-map properties at 100 points", r.all_passed(), verdict(r));
  }
  {
    int d1 = induced_dim(g_group(), h_in_g(), point_space(h_group(), c_check_h()));
    int d2 = induced_dim(gprime_group(), hprime_in_gprime(),
                         point_space(hprime_group(), c_check_hprime()));
    bool pass = d1 == 2 && d2 == 2 && orbit_X().chart_dim == 2 && orbit_Xprime().chart_dim == 2;
    report(2, "induced dimension formula 2 dim(G/H) + dim(Y)", pass,
           "dims " + std::to_string(d1) + ", " + std::to_string(d2));
  }
  {
    HausdorffResult a = moment_image_vs_X();
    HausdorffResult b = moment_image_vs_Xprime();
    bool pass = a.dist < 1e-6 && b.dist < 1e-6 && a.injective && b.injective;
    report(3, "induced-orbit identity: momentum image = orbit (500 points)", pass,
           "hausdorff " + format_double(std::max(a.dist, b.dist)) +
               (a.injective && b.injective ? ", injective on classes" : ", injectivity FAILED"));
  }
  {
    SuiteReport r = run("stages", 200);
    report(4, "induction in stages on H c G c G'", r.all_passed(), verdict(r));
  }
  {
    SuiteReport r = run("frobenius-symplectic", 200);
    report(5, "symplectic Frobenius: Hom is a point, 50 round trips", r.all_passed(), verdict(r));
  }
  {
    SuiteReport r = run("contact-reeb", 200);
    report(6, "contact forms, Reeb fields and lifted actions", r.all_passed(), verdict(r));
  }
  {
    SuiteReport r = run("prequantum-consistency", 200);
    report(7, "prequantum constructions cover the symplectic ones", r.all_passed(), verdict(r));
  }
  {
    SuiteReport r = run("gauge-holonomy", 200);
    report(8, "integer gauge equivalence and loop holonomy", r.all_passed(), verdict(r));
  }
  {
    SuiteReport r = run("frobenius-prequantum", 200);
    report(9, "prequantum Frobenius: Hom is a single circle", r.all_passed(), verdict(r));
  }
  {
    bool pass = true;
    for (const char* name : {"induction-dims", "gauge-holonomy"}) {
      SuiteConfig cfg;
      cfg.suite = name;
      cfg.samples = 20;
      if (to_json(run_suite(cfg)) != to_json(run_suite(cfg))) pass = false;
    }
    report(10, "bit-identical JSON reports for identical configs", pass);
  }
  std::printf("%d/10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
