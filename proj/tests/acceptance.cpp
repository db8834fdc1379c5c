// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "swarmauth/baseline5g.hpp"
#include "swarmauth/protocol.hpp"
#include "swarmauth/simnet.hpp"

using namespace swarmauth;
using namespace std::chrono_literals;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(const std::string& name, std::chrono::milliseconds budget,
               const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  if (v.ok && elapsed > budget) {
    v = {false, "took " + std::to_string(elapsed.count()) + " ms, budget " +
                    std::to_string(budget.count()) + " ms"};
  }
  if (!v.ok) ++failures;
  std::cout << (v.ok ? "PASS " : "FAIL ") << name << " (" << elapsed.count() << " ms)";
  if (!v.detail.empty()) std::cout << ": " << v.detail;
  std::cout << std::endl;
}

struct CliResult {
  int status = -1;
  std::string out;
};

CliResult cli(const std::string& args) {
  const std::string cmd = std::string(SWARMAUTH_CLI) + " " + args + " 2>&1";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  while (auto n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string fixture(const std::string& name) {
  return std::string(SWARMAUTH_FIXTURES) + "/" + name;
}

double total_ms(const std::string& line) {
  auto at = line.find("total_ms=");
  if (at == std::string::npos) return -1;
  return std::stod(line.substr(at + 9));
}


// --------------------------------------------------------------- criteria

Verdict baseline_timing() {
  Verdict v;
  auto plain = cli("run --config " + fixture("nr5g_default.yaml"));
  auto hashed = cli("run --config " + fixture("nr5g_hash.yaml"));
  v.require(plain.status == 0 && hashed.status == 0, "cli run failed");
  const double a = total_ms(plain.out), b = total_ms(hashed.out);
  v.require(a == 21.6, "default total " + std::to_string(a));
  v.require(b == 22.0, "hash_op=0.2ms total " + std::to_string(b));
  v.require(std::abs(a - 22.0) <= 0.5 && std::abs(b - 22.0) <= 0.5, "outside 22 +/- 0.5 ms");
  v.detail = "default 21.600 ms, hash_op=0.2ms 22.000 ms";
  return v;
}

Verdict group_auth_law() {
  Verdict v;
  sim::ScenarioConfig cfg;
  cfg.scenario = sim::ScenarioKind::kInclusion;
  cfg.group = sim::GroupChoice::kToy;  // timing does not depend on the group
  for (std::size_t t = 2; t <= 20; ++t) {
    cfg.threshold = t;
    auto r = sim::run_scenario(cfg);
    const auto expected = sim::Nanos(1'212'000 * static_cast<long>(t));
    v.require(r.outcome.accepted, "inclusion rejected at t=" + std::to_string(t));
    v.require(r.reports.front().total == expected, "simulated t=" + std::to_string(t));
    v.require(sim::time_group_auth(t, cfg.latency) == expected, "closed form t=" + std::to_string(t));
  }
  auto five = cli("run --config " + fixture("inclusion_t5.yaml"));
  v.require(five.status == 0 && total_ms(five.out) == 6.06, "cli t=5: " + five.out);
  v.require(std::abs(total_ms(five.out) - 6.0) <= 0.1, "t=5 not within 6 +/- 0.1 ms");
  if (v.ok) v.detail = "1.212 t ms for t=2..20; t=5 -> 6.060 ms";
  return v;
}

Verdict crossover_report() {
  Verdict v;
  sim::LatencyModel m;
  auto report = sim::crossover(m);
  v.require(report.crossover_t == 18, "crossover " + std::to_string(report.crossover_t));
  v.require(report.claim_conservative, "claim not flagged conservative");
  auto run = cli("run --config " + fixture("nr5g_default.yaml"));
  v.require(run.out.find("crossover_t=18") != std::string::npos, "crossover missing from run output");
  v.require(run.out.find("conservative") != std::string::npos, "conservative flag missing");
  auto sweep = cli("sweep --variable threshold --from 2 --to 9");
  v.require(sweep.out.find("crossover_t=18") != std::string::npos, "crossover missing from sweep");
  // t < 10 implies group auth is faster, checked on simulated timings.
  sim::ScenarioConfig nr;
  nr.scenario = sim::ScenarioKind::kNr5g;
  const auto baseline = sim::run_scenario(nr).reports.front().total;
  for (std::size_t t = 2; t < 10; ++t) {
    sim::ScenarioConfig inc;
    inc.scenario = sim::ScenarioKind::kInclusion;
    inc.threshold = t;
    inc.group = sim::GroupChoice::kToy;
    v.require(sim::run_scenario(inc).reports.front().total < baseline,
              "group auth not faster at t=" + std::to_string(t));
  }
  if (v.ok) v.detail = report.describe();
  return v;
}

Verdict bulk_admission() {
  Verdict v;
  auto run = cli("run --config " + fixture("bulk_100.yaml"));
  v.require(run.status == 0, "cli run failed");
  std::istringstream lines(run.out);
  std::string line;
  double group = -1, nr = -1;
  while (std::getline(lines, line)) {
    if (line.find("method=group-auth") != std::string::npos) group = total_ms(line);
    if (line.find("method=nr-5g") != std::string::npos) nr = total_ms(line);
  }
  v.require(nr >= 2160 && nr <= 2200, "nr5g " + std::to_string(nr) + " ms");
  v.require(group >= 60 && group <= 70, "group " + std::to_string(group) + " ms");
  if (v.ok) {
    std::ostringstream s;
    s << "nr5g " << nr << " ms, group-auth " << group << " ms";
    v.detail = s.str();
  }
  return v;
}

// Exhaustive oracle over Z_13: for each identifier set, enumerate all
// 13^t polynomials of degree < t and read off the constant term of the one
// that is 1 at x_i and 0 at the other identifiers.
bool lagrange_matches_bruteforce(std::string& why) {
  constexpr std::uint64_t q = 13;
  ToyGroup g(q);
  for (std::size_t t = 2; t <= 4; ++t) {
    std::size_t pow = 1;
    for (std::size_t k = 0; k < t; ++k) pow *= q;
    std::vector<std::uint64_t> subset(t);
    std::vector<bool> pick(12, false);
    std::fill(pick.end() - static_cast<long>(t), pick.end(), true);
    do {
      std::size_t k = 0;
      for (std::size_t j = 0; j < 12; ++j) {
        if (pick[j]) subset[k++] = j + 1;
      }
      std::vector<std::int64_t> oracle(t, -1);
      for (std::size_t code = 0; code < pow; ++code) {
        std::array<std::uint64_t, 4> c{};
        for (std::size_t d = 0, rest = code; d < t; ++d, rest /= q) c[d] = rest % q;
        int hot = -1;
        bool unit = true;
        for (std::size_t i = 0; i < t && unit; ++i) {
          std::uint64_t val = 0;
          for (std::size_t d = t; d-- > 0;) val = (val * subset[i] + c[d]) % q;
          if (val == 1 && hot < 0) hot = static_cast<int>(i);
          else if (val != 0) unit = false;
        }
        if (unit && hot >= 0) {
          if (oracle[hot] != -1) {
            why = "oracle not unique";
            return false;
          }
          oracle[hot] = static_cast<std::int64_t>(c[0]);
        }
      }
      std::vector<ToyGroup::Scalar> xs;
      for (auto x : subset) xs.push_back(g.scalar(x));
      for (std::size_t i = 0; i < t; ++i) {
        auto got = lagrange_coeff_at_zero<ToyGroup>(g, xs, i).value;
        if (oracle[i] < 0 || got != static_cast<std::uint64_t>(oracle[i])) {
          why = "lambda mismatch at t=" + std::to_string(t);
          return false;
        }
      }
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  return true;
}

Verdict crypto_suite() {
  Verdict v;
  ToyGroup g((1ull << 61) - 1);
  Rng rng(20240601);

  auto distinct_ids = [&](std::size_t count) {
    std::vector<std::uint64_t> ids;
    while (ids.size() < count) {
      auto x = 1 + rng.below(1'000'000);
      if (std::find(ids.begin(), ids.end(), x) == ids.end()) ids.push_back(x);
    }
    return ids;
  };

  // (a) completeness
  std::size_t rejected = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t t = 2 + rng.below(7);
    auto poly = gen_polynomial(g, t, rng);
    std::vector<PublicShare<ToyGroup>> shares;
    for (auto x : distinct_ids(t)) shares.push_back(public_share(g, issue_share(g, poly, g.scalar(x))));
    if (!verify_group<ToyGroup>(g, shares, group_commitment(g, poly), t)) ++rejected;
  }
  v.require(rejected == 0, std::to_string(rejected) + " honest subsets rejected");

  // (b) soundness
  std::size_t false_accepts = 0;
  const int kSoundness = 10'000;
  for (int trial = 0; trial < kSoundness; ++trial) {
    const std::size_t t = 2 + rng.below(7);
    auto poly = gen_polynomial(g, t, rng);
    std::vector<PublicShare<ToyGroup>> shares;
    for (auto x : distinct_ids(t)) shares.push_back(public_share(g, issue_share(g, poly, g.scalar(x))));
    auto& victim = shares[rng.below(t)];
    auto delta = g.random_point(rng);
    while (delta == g.identity()) delta = g.random_point(rng);
    victim.Y = g.point_add(victim.Y, delta);
    if (verify_group<ToyGroup>(g, shares, group_commitment(g, poly), t)) ++false_accepts;
  }
  v.require(false_accepts == 0, std::to_string(false_accepts) + " corrupted subsets accepted");

  // (c) recovery over every t-subset of t+3 shares, on both groups
  std::size_t subsets = 0;
  auto recovery = [&](const auto& grp, std::size_t t_max) {
    using G = std::decay_t<decltype(grp)>;
    for (std::size_t t = 2; t <= t_max; ++t) {
      auto poly = gen_polynomial(grp, t, rng);
      const std::size_t n = t + 3;
      std::vector<PrivateShare<G>> all;
      for (std::size_t x = 1; x <= n; ++x) all.push_back(issue_share(grp, poly, grp.scalar(x)));
      std::vector<bool> pick(n, false);
      std::fill(pick.end() - static_cast<long>(t), pick.end(), true);
      do {
        std::vector<PrivateShare<G>> chosen;
        for (std::size_t j = 0; j < n; ++j) {
          if (pick[j]) chosen.push_back(all[j]);
        }
        ++subsets;
        if (!(recover_group_key<G>(grp, chosen, t) == poly.group_key())) return false;
      } while (std::next_permutation(pick.begin(), pick.end()));
    }
    return true;
  };
  v.require(recovery(g, 6), "toy recovery mismatch");
  v.require(recovery(Ristretto255{}, 6), "ristretto255 recovery mismatch");

  // (d) Lagrange vs brute force on q = 13
  std::string why;
  v.require(lagrange_matches_bruteforce(why), "lagrange: " + why);

  if (v.ok) {
    v.detail = "1000 complete, " + std::to_string(kSoundness) + " corrupted rejected, " +
               std::to_string(subsets) + " subsets recovered, q=13 lagrange exhaustive";
  }
  return v;
}

Verdict protocol_end_to_end() {
  Verdict v;
  Ristretto255 g;

  {
    Rng rng(77);
    CoreNetwork<Ristretto255> core(g, rng.fork());
    auto swarm = core.provision_swarm(1, 5, 6, 4);
    for (int k = 0; k < 5; ++k) {
      auto candidate = core.enroll(1);
      DirectNetwork net;
      auto run = run_inclusion(g, swarm, candidate, net, rng);
      const auto& a0 = core.dealer(1).polynomial().group_key();
      v.require(run.outcome.accepted, "inclusion rejected: " + run.outcome.describe());
      v.require(candidate.group_key && *candidate.group_key == a0, "candidate lacks a0");
    }
  }

  {
    Rng rng(78);
    CoreNetwork<Ristretto255> core(g, rng.fork());
    auto a = core.provision_swarm(1, 4, 4, 3);
    auto b = core.provision_swarm(2, 4, 4, 3);
    DirectNetwork net;
    auto run = run_unification(g, a, b, core, net, rng);
    const auto& g0 = core.dealer(2).polynomial().group_key();
    v.require(run.outcome.accepted, "unification rejected: " + run.outcome.describe());
    for (const auto* s : {&a, &b}) {
      for (const auto& d : s->drones) {
        v.require(d.group_key && *d.group_key == g0, to_string(d.id) + " lacks g(0)");
      }
    }
  }

  for (auto kind : {sim::ScenarioKind::kInclusion, sim::ScenarioKind::kUnification}) {
    sim::ScenarioConfig cfg;
    cfg.scenario = kind;
    cfg.threshold = 4;
    cfg.n_drones = 4;
    cfg.guards = 3;
    cfg.seed = 4242;
    auto first = sim::run_scenario(cfg);
    auto second = sim::run_scenario(cfg);
    v.require(!first.transcript.empty() && first.transcript == second.transcript,
              std::string(sim::to_string(kind)) + " transcript not deterministic");
  }
  if (v.ok) v.detail = "5 inclusions hold a0; 8 drones hold g(0); transcripts reproducible";
  return v;
}

Verdict attack_suite() {
  Verdict v;
  for (const char* mode : {"replay", "mitm", "eavesdrop"}) {
    auto r = cli(std::string("attack --mode ") + mode + " --config " + fixture("inclusion_t5.yaml"));
    v.require(r.status == 0, std::string(mode) + " exit " + std::to_string(r.status) + "\n" + r.out);
  }
  if (v.ok) v.detail = "replay, mitm, eavesdrop exit 0";
  return v;
}

Verdict nr5g_flow() {
  Verdict v;
  Ristretto255 g;
  Rng rng(5150);
  auto keys = nr5g::generate_network_keys(g, rng);
  std::size_t tampered = 0;
  for (int i = 0; i < 100; ++i) {
    auto supi = nr5g::random_supi(rng);
    auto ok = nr5g::run_flow(g, supi, keys, rng);
    v.require(ok.supi && *ok.supi == supi, "happy path lost SUPI " + std::to_string(i));
    for (auto t : {nr5g::Tamper::kSuci, nr5g::Tamper::kRand, nr5g::Tamper::kHxres,
                   nr5g::Tamper::kRes, nr5g::Tamper::kResAfterSeaf}) {
      auto bad = nr5g::run_flow(g, supi, keys, rng, t);
      v.require(!bad.supi && !bad.rejected_at.empty(), "tampering accepted");
      ++tampered;
    }
  }
  if (v.ok) v.detail = "100 SUPIs recovered; " + std::to_string(tampered) + " tampered flows rejected";
  return v;
}

}  // namespace

int main() {
  criterion("baseline timing: nr5g 21.6 ms default, 22.0 ms with hash_op=0.2ms", 1000ms,
            baseline_timing);
  criterion("group-auth timing law: 1.212 t ms, t=5 -> 6.06 ms", 1000ms, group_auth_law);
  criterion("crossover report: t=18, small-threshold claim flagged conservative", 1000ms,
            crossover_report);
  criterion("bulk admission: n=100 t=5 within [2.16 s, 2.20 s] and [60 ms, 70 ms]", 1000ms,
            bulk_admission);
  criterion("cryptographic correctness: completeness, soundness, recovery, lagrange", 30000ms,
            crypto_suite);
  criterion("protocol end-to-end: inclusion yields a0, unification yields g(0), determinism",
            30000ms, protocol_end_to_end);
  criterion("attack suite: replay, mitm, eavesdrop thwarted via cli", 10000ms, attack_suite);
  criterion("5g flow: 100 SUPIs recovered, every tampering rejected", 30000ms, nr5g_flow);
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
