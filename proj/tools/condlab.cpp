// condlab: experiment harness for conditional-sampling support-size
// estimation, two-query testers, oracle adapters, protocol simulations and
// the numeric analysis suite.  Every run is determined by one root seed;
// trial i uses mix(root ^ i).

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "condlab/adapters.hpp"
#include "condlab/analysis.hpp"
#include "condlab/estimators.hpp"
#include "condlab/instances.hpp"
#include "condlab/oracle.hpp"
#include "condlab/protocols.hpp"
#include "condlab/testers.hpp"
#include "csv.hpp"

using namespace condlab;
using condlab_cli::CsvWriter;
using condlab_cli::fstr;
using condlab_cli::str;

namespace {

uint64_t seed_or_env(std::optional<uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CONDLAB_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

std::vector<uint8_t> parse_bits(const std::string& s) {
  std::vector<uint8_t> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit strings use characters 0 and 1");
    bits.push_back(c == '1');
  }
  return bits;
}

std::vector<uint8_t> random_bits(uint32_t n, Rng& rng) {
  std::vector<uint8_t> bits(n);
  for (auto& b : bits) b = rng.coin();
  return bits;
}

// Query script: one set per line, whitespace-separated indices.
std::vector<IndexSet> load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open script file " + path);
  std::vector<IndexSet> sets;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<uint32_t> v;
    uint32_t idx;
    while (ls >> idx) v.push_back(idx);
    if (!ls.eof())
      throw std::invalid_argument("script line " + std::to_string(lineno) + ": bad index");
    if (!v.empty()) sets.push_back(IndexSet(std::move(v)));
  }
  return sets;
}

void run_parallel_trials(size_t trials, const std::function<void(size_t)>& body) {
  unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), 4);
  if (workers <= 1 || trials < 8) {
    for (size_t t = 0; t < trials; ++t) body(t);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        size_t t = next.fetch_add(1);
        if (t >= trials) return;
        body(t);
      }
    });
  for (auto& th : pool) th.join();
}

void write_query_plot(const std::string& path, const std::vector<uint64_t>& queries) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open plot file " + path);
  const int w = 640, h = 240, pad = 30;
  uint64_t qmax = 1;
  for (uint64_t q : queries) qmax = std::max(qmax, q);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n<polyline fill='none' "
         "stroke='steelblue' stroke-width='1' points='";
  for (size_t i = 0; i < queries.size(); ++i) {
    double x = pad + (w - 2.0 * pad) * (queries.size() > 1 ? double(i) / (queries.size() - 1) : 0.5);
    double y = h - pad - (h - 2.0 * pad) * double(queries[i]) / double(qmax);
    out << x << ',' << y << ' ';
  }
  out << "'/>\n<text x='" << pad << "' y='15' font-size='11'>queries per trial (max " << qmax
      << ")</text>\n</svg>\n";
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  std::string family;
  uint32_t n = 256;
  uint32_t i = 4;
  uint32_t i2 = 5;
  uint32_t x = 3;
  uint32_t m = 100;
  uint32_t k = 1;
  uint32_t support = 0;
  std::string xbits, ybits;
  std::string variant = "two-point";
  std::optional<uint64_t> seed;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  Rng rng(Rng::mix(seed_or_env(a.seed)));
  DiscreteDistribution d = [&] {
    if (a.family == "geometric") return instances::geometric_hard(a.n, a.i);
    if (a.family == "polya") return instances::polya_dirichlet(a.n, a.x, a.m, rng);
    if (a.family == "gap-hamming") {
      auto xb = a.xbits.empty() ? random_bits(a.n, rng) : parse_bits(a.xbits);
      auto yb = a.ybits.empty() ? random_bits(a.n, rng) : parse_bits(a.ybits);
      return instances::gap_hamming_instance(xb, yb);
    }
    if (a.family == "l2lower") {
      uint32_t root = static_cast<uint32_t>(std::lround(std::sqrt(double(a.n))));
      std::vector<uint32_t> g;
      for (uint32_t j = 1; j <= a.n && g.size() < a.n - root; ++j)
        if (j != a.k) g.push_back(j);
      return instances::l2_lower_instance(a.n, a.k, IndexSet(std::move(g)));
    }
    if (a.family == "bounded") {
      if (a.variant == "two-point")
        return instances::bounded_cond_instance(a.n, instances::BoundedVariant::TwoPoint, {a.i});
      return instances::bounded_cond_instance(a.n, instances::BoundedVariant::ThreePoint,
                                              {a.i, a.i2});
    }
    if (a.family == "perturbed-uniform") return instances::intro_perturbed_uniform(a.n, a.i, a.i2);
    if (a.family == "uniform") {
      if (a.support == 0 || a.support == a.n) return DiscreteDistribution::uniform(a.n);
      return instances::uniform_random_support(a.n, a.support, rng);
    }
    throw std::invalid_argument("unknown family " + a.family);
  }();
  if (a.out.empty() || a.out == "-") {
    d.save(std::cout);
  } else {
    d.save_file(a.out);
  }
  return 0;
}

// ---- estimate ----------------------------------------------------------------

struct EstimateArgs {
  std::string dist;
  std::string oracle = "cond";
  double eps = 0.25;
  bool constant_factor = false;
  size_t trials = 1;
  uint32_t amplify = 1;
  std::optional<uint64_t> seed;
  std::string out;
  std::string plot;
};

int cmd_estimate(const EstimateArgs& a) {
  auto d = DiscreteDistribution::load_file(a.dist);
  if ((d.n() & (d.n() - 1)) != 0)
    throw std::invalid_argument("estimate: domain size must be a power of two (pad the file)");

  std::string kind = a.oracle;
  uint32_t bound_k = 0;
  if (auto at = kind.find('@'); at != std::string::npos) {
    bound_k = static_cast<uint32_t>(std::stoul(kind.substr(at + 1)));
    kind = kind.substr(0, at);
  }
  if (kind != "cond")
    throw std::invalid_argument("estimate drives the cond oracle (got " + kind + ")");
  if (bound_k > 0 && !a.constant_factor)
    throw std::invalid_argument("bounded conditioning composes with --constant-factor only");

  uint64_t root = seed_or_env(a.seed);
  struct Row {
    EstimatorReport rep;
    uint64_t queries = 0;
    uint64_t seed = 0;
  };
  std::vector<Row> rows(a.trials);
  run_parallel_trials(a.trials, [&](size_t t) {
    uint64_t trial_seed = Rng::mix(root ^ t);
    uint32_t reps = a.amplify | 1;  // odd
    std::vector<EstimatorReport> cand;
    uint64_t queries = 0;
    for (uint32_t r = 0; r < reps; ++r) {
      OracleSession session(d, Rng::mix(trial_seed ^ (0xA11CEull + r)));
      Rng hash_rng(Rng::mix(trial_seed ^ (0xB0Bull + r)));
      EstimatorReport rep;
      if (a.constant_factor) {
        rep = bound_k ? estimate_support_constant_bounded(session, bound_k, hash_rng)
                      : estimate_support_constant(session, hash_rng);
      } else {
        rep = estimate_support_eps(session, a.eps, hash_rng);
      }
      queries += session.ledger().total();
      cand.push_back(rep);
    }
    std::sort(cand.begin(), cand.end(),
              [](const EstimatorReport& x, const EstimatorReport& y) { return x.estimate < y.estimate; });
    rows[t] = Row{cand[cand.size() / 2], queries, trial_seed};
  });

  CsvWriter csv(a.out);
  csv.row({"seed", "n", "true_s", "estimate", "t_prime", "t_star", "queries"});
  double sum_est = 0, sum_q = 0;
  std::vector<uint64_t> qcurve;
  for (const Row& r : rows) {
    csv.row({str(r.seed), str(d.n()), str(d.support_size()), fstr(r.rep.estimate),
             str(r.rep.t_prime), r.rep.t_star ? str(*r.rep.t_star) : "",
             str(r.queries)});
    sum_est += r.rep.estimate;
    sum_q += double(r.queries);
    qcurve.push_back(r.queries);
  }
  csv.row({"summary", str(d.n()), str(d.support_size()), fstr(sum_est / a.trials), "", "",
           fstr(sum_q / a.trials)});
  if (!a.plot.empty()) write_query_plot(a.plot, qcurve);
  return 0;
}

// ---- test -------------------------------------------------------------------

struct TestArgs {
  std::string kind;
  std::string dist, dist2;
  std::string m = "1";
  double eps = 0.25;
  size_t trials = 1;
  bool optimize_complement = false;
  std::optional<uint64_t> seed;
  std::string out;
};

int cmd_test(const TestArgs& a) {
  auto d = DiscreteDistribution::load_file(a.dist);
  uint64_t root = seed_or_env(a.seed);
  CsvWriter csv(a.out);

  if (a.kind == "equivalence") {
    if (a.dist2.empty()) throw std::invalid_argument("test equivalence needs --dist2");
    auto d2 = DiscreteDistribution::load_file(a.dist2);
    csv.row({"trial", "verdict", "set_eval_queries"});
    size_t accepts = 0;
    for (size_t t = 0; t < a.trials; ++t) {
      uint64_t s = Rng::mix(root ^ t);
      OracleSession sa(d, Rng::mix(s ^ 1));
      OracleSession sb(d2, Rng::mix(s ^ 2));
      Rng rng(Rng::mix(s ^ 3));
      Verdict v = test_equivalence(sa, sb, rng);
      accepts += v == Verdict::Accept;
      csv.row({str(t), v == Verdict::Accept ? "accept" : "reject",
               str(sa.ledger().set_eval + sb.ledger().set_eval)});
    }
    csv.row({"summary", fstr(double(accepts) / a.trials), ""});
    return 0;
  }
  if (a.kind == "grained") {
    mpz_class m(a.m);
    csv.row({"trial", "verdict", "set_eval_queries"});
    size_t accepts = 0;
    for (size_t t = 0; t < a.trials; ++t) {
      uint64_t s = Rng::mix(root ^ t);
      OracleSession sa(d, Rng::mix(s ^ 1));
      Rng rng(Rng::mix(s ^ 2));
      Verdict v = test_grained(sa, m, rng);
      accepts += v == Verdict::Accept;
      csv.row({str(t), v == Verdict::Accept ? "accept" : "reject", str(sa.ledger().set_eval)});
    }
    csv.row({"summary", fstr(double(accepts) / a.trials), ""});
    return 0;
  }
  if (a.kind == "l2") {
    csv.row({"trial", "estimate", "exact", "set_eval_queries"});
    double sum = 0;
    for (size_t t = 0; t < a.trials; ++t) {
      uint64_t s = Rng::mix(root ^ t);
      OracleSession sa(d, Rng::mix(s ^ 1));
      Rng rng(Rng::mix(s ^ 2));
      auto rep = estimate_l2_squared(sa, a.eps, rng, a.optimize_complement);
      sum += rep.estimate;
      csv.row({str(t), fstr(rep.estimate), rep.exact.str(), str(sa.ledger().set_eval)});
    }
    csv.row({"summary", fstr(sum / a.trials), l2_squared_exact(d).str(), ""});
    return 0;
  }
  throw std::invalid_argument("unknown test kind " + a.kind);
}

// ---- adapt ------------------------------------------------------------------

struct AdaptArgs {
  std::string kind;
  std::string dist;
  std::string oracle = "set-eval";
  std::string script;
  uint32_t k = 2;
  std::optional<uint64_t> seed;
};

int cmd_adapt(const AdaptArgs& a) {
  auto d = DiscreteDistribution::load_file(a.dist);
  auto sets = load_script(a.script);
  if (sets.empty()) throw std::invalid_argument("script has no queries");
  uint64_t root = seed_or_env(a.seed);

  if (a.kind == "laminar") {
    if (a.oracle == "set-eval") {
      auto algo = [&sets](SetEvalOracleRef& oracle, Rng&) -> double {
        double acc = 0;
        for (const IndexSet& s : sets) acc += oracle.query(s).to_double();
        return acc;
      };
      OracleSession s1(d, Rng::mix(root ^ 1)), s2(d, Rng::mix(root ^ 1));
      Rng r1(Rng::mix(root ^ 2)), r2(Rng::mix(root ^ 2));
      auto direct = run_set_eval_direct(algo, s1, r1);
      auto lam = laminarize_set_eval(algo, s2, r2);
      std::cout << "# direct run (" << direct.transcript.inner_queries << " queries)\n";
      for (auto& [set, mass] : direct.transcript.outer)
        std::cout << set.str() << " -> " << mass.str() << "\n";
      std::cout << "# laminar simulation (" << lam.transcript.inner_queries
                << " inner queries, laminar=" << (lam.transcript.laminar() ? "yes" : "no")
                << ", repeated-set cache hits=" << (lam.transcript.repeated_outer_set ? "yes" : "no")
                << ")\n";
      for (auto& [set, mass] : lam.transcript.outer)
        std::cout << set.str() << " -> " << mass.str() << "\n";
      std::cout << "# inner sets\n";
      for (auto& set : lam.transcript.inner_sets) std::cout << set.str() << "\n";
      std::cout << (direct.output == lam.output ? "# outputs identical\n" : "# OUTPUT MISMATCH\n");
      return 0;
    }
    if (a.oracle == "cond-eval") {
      auto algo = [&sets](CondEvalOracleRef& oracle, Rng&) -> double {
        double acc = 0;
        for (const IndexSet& s : sets) {
          auto ans = oracle.query(s);
          acc += ans.failed ? -1 : ans.element;
        }
        return acc;
      };
      OracleSession s1(d, Rng::mix(root ^ 1)), s2(d, Rng::mix(root ^ 1));
      Rng r1(Rng::mix(root ^ 2)), r2(Rng::mix(root ^ 2));
      auto direct = run_cond_eval_direct(algo, s1, r1);
      auto lam = laminarize_cond_eval(algo, s2, r2);
      auto dump = [](const char* label, const CondEvalRun& run) {
        std::cout << "# " << label << " (" << run.transcript.inner_queries << " inner queries)\n";
        for (size_t i = 0; i < run.answers.size(); ++i) {
          const auto& ans = run.answers[i];
          std::cout << run.transcript.outer[i].first.str() << " -> ";
          if (ans.failed)
            std::cout << "failure\n";
          else
            std::cout << "(" << ans.element << ", " << ans.p.str() << ", " << ans.cp.str() << ")\n";
        }
      };
      dump("direct run", direct);
      dump("laminar simulation", lam);
      std::cout << "# laminar=" << (lam.transcript.laminar() ? "yes" : "no") << "\n";
      return 0;
    }
    throw std::invalid_argument("adapt laminar --oracle must be set-eval or cond-eval");
  }
  if (a.kind == "bounded") {
    Rng rng(Rng::mix(root ^ 5));
    OracleSession direct_s(d, Rng::mix(root ^ 6));
    OracleSession sim_s(d, Rng::mix(root ^ 6));
    for (const IndexSet& s : sets) {
      auto direct = direct_s.cond_eval(s);
      auto sim = simulate_bounded_cond_eval(sim_s, s, a.k, rng);
      auto show = [](const OracleResponse& r) -> std::string {
        if (is_failure(r)) return "failure";
        const auto& se = std::get<SampleEval>(r);
        return "(" + std::to_string(se.j) + ", " + se.p.str() + ", " + se.cp.str() + ")";
      };
      std::cout << s.str() << " direct=" << show(direct) << " simulated=" << show(sim) << "\n";
    }
    std::cout << "# bounded queries @k=" << a.k << ": " << sim_s.ledger().bounded_total()
              << " vs direct cond-eval: " << direct_s.ledger().cond_eval << "\n";
    return 0;
  }
  throw std::invalid_argument("unknown adapt kind " + a.kind);
}

// ---- protocol ----------------------------------------------------------------

struct ProtocolArgs {
  std::string kind;
  uint32_t n = 1 << 16;
  uint32_t g = 0;
  size_t trials = 100;
  std::string xbits, ybits;
  std::optional<uint64_t> seed;
  std::string out;
};

int cmd_protocol(const ProtocolArgs& a) {
  uint64_t root = seed_or_env(a.seed);
  CsvWriter csv(a.out);
  if (a.kind == "guessing") {
    std::vector<GuessingTrialRow> rows;
    auto stats = run_integer_guessing(a.n, a.trials, support_estimator_algorithm(a.n), root, &rows);
    csv.row({"trial", "x", "guess", "steps", "msg_bits", "round_trip_ok"});
    for (size_t t = 0; t < rows.size(); ++t)
      csv.row({str(t), str(rows[t].x), str(rows[t].guess), str(rows[t].steps),
               str(rows[t].msg_bits), rows[t].round_trip_ok ? "1" : "0"});
    csv.row({"summary", fstr(stats.mean_rank()), fstr(stats.mean_rank_sq()),
             fstr(stats.frac_msg_le_16t()), fstr(stats.accuracy()),
             fstr(double(stats.total_msg_bits) / stats.trials),
             str(stats.round_trip_failures)});
    std::cerr << "mean_rank=" << stats.mean_rank() << " mean_rank_sq=" << stats.mean_rank_sq()
              << " frac(|M|<=16t)=" << stats.frac_msg_le_16t() << " accuracy=" << stats.accuracy()
              << "\n";
    return 0;
  }
  if (a.kind == "ghd") {
    if (a.g == 0) throw std::invalid_argument("protocol ghd needs --g >= 1");
    csv.row({"trial", "hamming", "decision", "outside_promise", "estimate", "bits", "queries",
             "bits_per_query_max"});
    for (size_t t = 0; t < a.trials; ++t) {
      uint64_t s = Rng::mix(root ^ t);
      Rng rng(s);
      auto xb = a.xbits.empty() ? random_bits(a.n, rng) : parse_bits(a.xbits);
      auto yb = a.ybits.empty() ? random_bits(a.n, rng) : parse_bits(a.ybits);
      uint32_t hd = 0;
      for (uint32_t i = 0; i < a.n; ++i) hd += xb[i] != yb[i];
      auto res = ghd_two_party(xb, yb, a.g, Rng::mix(s ^ 7));
      csv.row({str(t), str(hd), res.yes ? "yes" : "no", res.outside_promise ? "1" : "0",
               fstr(res.estimate), str(res.bits), str(res.queries), str(res.max_bits_per_query)});
    }
    return 0;
  }
  throw std::invalid_argument("unknown protocol kind " + a.kind);
}

// ---- analyze -----------------------------------------------------------------

struct AnalyzeArgs {
  std::string kind;
  double a = 1.0, b = 1e-4, c = 1e7, delta = 1e-3, d = 0.5, bucket = 0.05;
  size_t samples = 100000, trials = 10000;
  std::string alphas = "0.5,0.25,0.125";
  std::string aset = "1,2", bset = "1";
  std::optional<uint64_t> seed;
  std::string out;
};

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> v;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) v.push_back(std::stod(tok));
  return v;
}

std::vector<uint32_t> parse_indices(const std::string& s) {
  std::vector<uint32_t> v;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) v.push_back(static_cast<uint32_t>(std::stoul(tok)));
  return v;
}

int cmd_analyze(const AnalyzeArgs& a) {
  Rng rng(Rng::mix(seed_or_env(a.seed)));
  CsvWriter csv(a.out);
  csv.row({"check", "value", "threshold", "verdict"});
  if (a.kind == "digamma") {
    auto scan = analysis::check_digamma_bound(10000);
    csv.row({"max |w psi(w)| on (0,1]", fstr(scan.max_value), "3", scan.max_value <= 3 ? "pass" : "fail"});
    return 0;
  }
  if (a.kind == "klscan") {
    analysis::KlScanConfig cfg;
    cfg.trials = a.trials;
    auto scan = analysis::kl_bound_scan(cfg, rng);
    csv.row({"max KL over laminar geometric configurations", fstr(scan.max_value), "10",
             scan.max_value <= 10 ? "pass" : "fail"});
    return 0;
  }
  if (a.kind == "betatail") {
    auto rep = analysis::beta_tail_check(a.a, a.b, a.c, a.delta, a.samples, rng);
    csv.row({"Pr[Y <= 1-delta]", fstr(rep.empirical_tail),
             fstr(rep.chebyshev_bound + 3 * rep.mc_sigma), rep.within_bound ? "pass" : "fail"});
    csv.row({"mean", fstr(rep.mean), fstr(rep.expected_mean), ""});
    return 0;
  }
  if (a.kind == "dirichlet") {
    auto alphas = parse_doubles(a.alphas);
    double total = 0;
    for (double v : alphas) total += v;
    std::vector<double> sum(alphas.size(), 0.0), sumsq(alphas.size(), 0.0);
    for (size_t i = 0; i < a.samples; ++i) {
      auto p = analysis::dirichlet_sample(alphas, rng);
      for (size_t j = 0; j < p.size(); ++j) {
        sum[j] += p[j];
        sumsq[j] += p[j] * p[j];
      }
    }
    bool all = true;
    for (size_t j = 0; j < alphas.size(); ++j) {
      double mean = sum[j] / a.samples;
      double se = std::sqrt(std::max(sumsq[j] / a.samples - mean * mean, 0.0) / a.samples);
      bool ok = std::fabs(mean - alphas[j] / total) <= 3 * se;
      all = all && ok;
      csv.row({"coordinate " + str(j + 1) + " mean", fstr(mean), fstr(alphas[j] / total),
               ok ? "pass" : "fail"});
    }
    csv.row({"all coordinates within 3 SE", all ? "1" : "0", "", all ? "pass" : "fail"});
    return 0;
  }
  if (a.kind == "independence") {
    auto rep = analysis::independence_property_check(parse_doubles(a.alphas), parse_indices(a.aset),
                                                     parse_indices(a.bset), a.d, a.bucket,
                                                     a.samples, 0.01, rng);
    if (rep.inconclusive) {
      csv.row({"K-S vs Beta", "", "", "inconclusive (empty bucket)"});
      return 0;
    }
    csv.row({"K-S statistic (" + str(rep.bucket_samples) + " conditioned samples)",
             fstr(rep.ks_statistic), fstr(rep.ks_critical), rep.pass ? "pass" : "fail"});
    return 0;
  }
  throw std::invalid_argument("unknown analyze kind " + a.kind);
}

// ---- bench -------------------------------------------------------------------

int cmd_bench(const std::string& out, std::optional<uint64_t> seed) {
  uint64_t root = seed_or_env(seed);
  CsvWriter csv(out);
  csv.row({"name", "iterations", "seconds", "micros_per_op"});
  auto timed = [&](const std::string& name, size_t iters, auto&& fn) {
    auto start = std::chrono::steady_clock::now();
    for (size_t i = 0; i < iters; ++i) fn(i);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    csv.row({name, str(iters), fstr(secs), fstr(secs / iters * 1e6)});
  };

  auto geo = instances::geometric_hard(1 << 16, 16);
  OracleSession geo_s(geo, Rng::mix(root));
  IndexSet half = [&] {
    std::vector<uint32_t> v;
    for (uint32_t j = 1; j <= (1u << 16); j += 2) v.push_back(j);
    return IndexSet(std::move(v));
  }();
  timed("cond on geometric_hard(2^16,16), |S|=2^15", 2000, [&](size_t) { geo_s.cond(half); });

  Rng gen(Rng::mix(root ^ 1));
  auto uni = instances::uniform_random_support(1 << 16, 9000, gen);
  timed("constant-factor estimate, n=2^16", 200, [&](size_t i) {
    OracleSession s(uni, Rng::mix(root ^ (i * 2 + 3)));
    Rng rng(Rng::mix(root ^ (i * 2 + 4)));
    estimate_support_constant(s, rng);
  });
  timed("eps estimate (eps=0.25), n=2^16, s=9000", 3, [&](size_t i) {
    OracleSession s(uni, Rng::mix(root ^ (i * 2 + 5)));
    Rng rng(Rng::mix(root ^ (i * 2 + 6)));
    estimate_support_eps(s, 0.25, rng);
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"condlab: conditional-sampling distribution-testing laboratory"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* sgen = app.add_subcommand("gen", "construct instance distributions");
  sgen->add_option("family", gen.family,
                   "geometric|polya|gap-hamming|l2lower|bounded|perturbed-uniform|uniform")
      ->required();
  sgen->add_option("--n", gen.n, "domain size");
  sgen->add_option("--i", gen.i, "geometric level / first index");
  sgen->add_option("--i2", gen.i2, "second index");
  sgen->add_option("--x", gen.x, "polya: K = 2^x colors");
  sgen->add_option("--m", gen.m, "polya steps");
  sgen->add_option("--k", gen.k, "l2lower spike index");
  sgen->add_option("--support", gen.support, "uniform: support size (default full)");
  sgen->add_option("--x-bits", gen.xbits, "gap-hamming: x as a 01 string");
  sgen->add_option("--y-bits", gen.ybits, "gap-hamming: y as a 01 string");
  sgen->add_option("--variant", gen.variant, "bounded: two-point|three-point");
  sgen->add_option("--seed", gen.seed, "random seed (else CONDLAB_SEED, else 0)");
  sgen->add_option("-o,--out", gen.out, "output file (default stdout)");

  EstimateArgs est;
  auto* sest = app.add_subcommand("estimate", "support-size estimators");
  sest->add_option("--dist", est.dist, "distribution file")->required();
  sest->add_option("--oracle", est.oracle, "cond or cond@k (bounded composition)");
  sest->add_option("--eps", est.eps, "accuracy for the (1+eps) estimator");
  sest->add_flag("--constant-factor", est.constant_factor, "run the 4*sqrt(2)-factor estimator");
  sest->add_option("--trials", est.trials, "independent trials");
  sest->add_option("--amplify", est.amplify, "median over this many runs per trial (odd)");
  sest->add_option("--seed", est.seed, "root seed");
  sest->add_option("-o,--out", est.out, "CSV output (default stdout)");
  sest->add_option("--plot", est.plot, "write an SVG query-count chart");

  TestArgs tst;
  auto* stst = app.add_subcommand("test", "two-query testers and the L2 sketch");
  stst->add_option("kind", tst.kind, "equivalence|grained|l2")->required();
  stst->add_option("--dist", tst.dist, "distribution file")->required();
  stst->add_option("--dist2", tst.dist2, "second distribution (equivalence)");
  stst->add_option("--m", tst.m, "grainedness parameter");
  stst->add_option("--eps", tst.eps, "l2 accuracy");
  stst->add_flag("--optimize-complement", tst.optimize_complement,
                 "derive D(S-) as 1-D(S+), halving queries");
  stst->add_option("--trials", tst.trials, "independent trials");
  stst->add_option("--seed", tst.seed, "root seed");
  stst->add_option("-o,--out", tst.out, "CSV output");

  AdaptArgs adp;
  auto* sadp = app.add_subcommand("adapt", "oracle-to-oracle simulations");
  sadp->add_option("kind", adp.kind, "laminar|bounded")->required();
  sadp->add_option("--dist", adp.dist, "distribution file")->required();
  sadp->add_option("--oracle", adp.oracle, "laminar: set-eval|cond-eval");
  sadp->add_option("--script", adp.script, "query script (one index set per line)")->required();
  sadp->add_option("--k", adp.k, "bounded: set size cap");
  sadp->add_option("--seed", adp.seed, "root seed");

  ProtocolArgs proto;
  auto* sproto = app.add_subcommand("protocol", "communication-protocol experiments");
  sproto->add_option("kind", proto.kind, "guessing|ghd")->required();
  sproto->add_option("--n", proto.n, "domain size (power of two for guessing)");
  sproto->add_option("--g", proto.g, "gap-hamming gap");
  sproto->add_option("--trials", proto.trials, "trials");
  sproto->add_option("--x-bits", proto.xbits, "fixed x input");
  sproto->add_option("--y-bits", proto.ybits, "fixed y input");
  sproto->add_option("--seed", proto.seed, "root seed");
  sproto->add_option("-o,--out", proto.out, "CSV output");

  AnalyzeArgs ana;
  auto* sana = app.add_subcommand("analyze", "numeric verification scans");
  sana->add_option("kind", ana.kind, "digamma|klscan|betatail|dirichlet|independence")->required();
  sana->add_option("--a", ana.a, "beta alpha");
  sana->add_option("--b", ana.b, "beta beta");
  sana->add_option("--c", ana.c, "tail scale");
  sana->add_option("--delta", ana.delta, "tail offset");
  sana->add_option("--d", ana.d, "conditioning target");
  sana->add_option("--bucket", ana.bucket, "conditioning bucket half-width");
  sana->add_option("--samples", ana.samples, "Monte Carlo samples");
  sana->add_option("--trials", ana.trials, "scan trials");
  sana->add_option("--alphas", ana.alphas, "comma-separated Dirichlet parameters");
  sana->add_option("--A", ana.aset, "outer index set, comma-separated");
  sana->add_option("--B", ana.bset, "inner index set, comma-separated");
  sana->add_option("--seed", ana.seed, "root seed");
  sana->add_option("-o,--out", ana.out, "CSV output");

  std::string bench_out;
  std::optional<uint64_t> bench_seed;
  auto* sbench = app.add_subcommand("bench", "quick wall-clock measurements");
  sbench->add_option("-o,--out", bench_out, "CSV output");
  sbench->add_option("--seed", bench_seed, "root seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sgen) return cmd_gen(gen);
    if (*sest) return cmd_estimate(est);
    if (*stst) return cmd_test(tst);
    if (*sadp) return cmd_adapt(adp);
    if (*sproto) return cmd_protocol(proto);
    if (*sana) return cmd_analyze(ana);
    if (*sbench) return cmd_bench(bench_out, bench_seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
