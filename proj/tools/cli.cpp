#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "bbg/backends.hpp"
#include "bbg/centralizer.hpp"
#include "bbg/enumerate.hpp"
#include "bbg/error.hpp"
#include "bbg/membership.hpp"
#include "bbg/normal_closure.hpp"
#include "bbg/primality.hpp"
#include "bbg/randgen.hpp"
#include "bbg/simd/kernels.hpp"
#include "bbg/stats.hpp"

namespace bbg::cli {

namespace {

using json = nlohmann::ordered_json;

// Groups up to this order are enumerated for exact comparisons in reports.
constexpr std::size_t kEnumerationLimit = 100'000;
// Exact rational convolution is used up to Sym_7.
constexpr std::size_t kExactLimit = 5040;

// ---------------------------------------------------------------------------
// Options shared by every subcommand

struct Common {
  std::optional<std::uint64_t> seed_flag;
  std::string output;
  bool no_timing = false;
  unsigned threads = 1;
  std::string isa = "auto";

  std::uint64_t seed = 0;
  std::string seed_source;
};

void add_common(CLI::App& sub, Common& c) {
  sub.add_option("--seed", c.seed_flag, "Seed (falls back to $BBG_SEED, then 0)");
  sub.add_option("--output", c.output, "Write the JSON report here instead of stdout");
  sub.add_flag("--no-timing", c.no_timing, "Omit the timing field from the report");
  sub.add_option("--threads", c.threads, "Split trials across independently seeded workers")
      ->check(CLI::Range(1u, 256u));
  sub.add_option("--isa", c.isa, "Kernel variant: auto, scalar or avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
}

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    throw ConfigError("BBG_SEED is not an unsigned integer: " + text);
  }
  if (used != text.size() || text.front() == '-')
    throw ConfigError("BBG_SEED is not an unsigned integer: " + text);
  return v;
}

void resolve_common(Common& c) {
  if (c.seed_flag) {
    c.seed = *c.seed_flag;
    c.seed_source = "flag";
  } else if (const char* env = std::getenv("BBG_SEED"); env && *env) {
    c.seed = parse_seed(env);
    c.seed_source = "env";
  } else {
    c.seed = 0;
    c.seed_source = "default";
  }
  if (c.isa == "scalar") simd::set_active_isa(simd::Isa::Scalar);
  else if (c.isa == "avx2") simd::set_active_isa(simd::Isa::Avx2);
  else simd::set_active_isa(simd::detected_isa());
}

json common_echo(const Common& c) {
  return {{"seed", c.seed}, {"threads", c.threads}, {"isa", c.isa}};
}

// Worker w of T uses seed ^ w and handles its share of `total` trials.
std::uint64_t share(std::uint64_t total, unsigned workers, unsigned w) {
  return total / workers + (w < total % workers ? 1 : 0);
}

template <typename R>
std::vector<R> run_workers(unsigned workers, const std::function<R(unsigned)>& body) {
  std::vector<std::optional<R>> results(workers);
  std::vector<std::exception_ptr> errors(workers);
  if (workers == 1) {
    results[0] = body(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          results[w] = body(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  std::vector<R> out;
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

// A second, decorrelated seed for an auxiliary stream owned by the same worker.
std::uint64_t derived_seed(std::uint64_t seed) { return Rng::splitmix64(seed); }

// ---------------------------------------------------------------------------
// Element and group helpers

std::vector<GroupElement> parse_list(const BlackBox& bb, const std::vector<std::string>& lits) {
  std::vector<GroupElement> out;
  for (const auto& s : lits) out.push_back(bb.parse(s));
  return out;
}

std::vector<std::string> format_list(const BlackBox& bb, const std::vector<GroupElement>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(bb.format(x));
  return out;
}

std::optional<EnumeratedGroup> enumerate_if_small(const BlackBox& bb,
                                                  const std::vector<GroupElement>& gens) {
  try {
    return EnumeratedGroup::closure(bb, gens, kEnumerationLimit);
  } catch (const NumericGuardError&) {
    return std::nullopt;
  }
}

std::string write_census(const std::string& path, const SampleCensus& census) {
  if (path.empty()) return {};
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open " + path + " for writing");
  write_census_csv(f, census);
  return path;
}

// Report summary of a census against an explicitly enumerated target group.
json census_summary(const SampleCensus& census, const EnumeratedGroup* target) {
  json j = {{"n_samples", census.n_samples}, {"support_size", census.support_size()}};
  if (!target) return j;
  std::uint64_t outside = 0;
  for (const auto& [x, c] : census.counts)
    if (!target->contains(x)) outside += c;
  j["target_order"] = target->size();
  j["outside_target"] = outside;
  if (outside == 0) {
    j["tv_to_uniform"] =
        tv_distance(Distribution::empirical(census), Distribution::uniform(target->elements()));
    if (target->size() >= 2 && census.n_samples >= 5 * target->size()) {
      const auto chi = chi_square_uniform(census, target->size());
      j["chi_square"] = {{"statistic", chi.statistic},
                         {"degrees_of_freedom", chi.degrees_of_freedom},
                         {"p_value", chi.p_value}};
    }
  }
  return j;
}

SampleCensus merge_all(const std::vector<SampleCensus>& parts) {
  SampleCensus all;
  for (const auto& p : parts) all.merge(p);
  return all;
}

// ---------------------------------------------------------------------------
// Subcommands. Each returns {config echo, result} and leaves the backend's
// multiplication count in `mults`.

struct Outcome {
  json config;
  json result;
  std::uint64_t multiplications = 0;
  json side_files = json::object();
};

struct PraArgs {
  std::string backend;
  std::vector<std::string> gens;
  std::optional<std::size_t> k;
  std::optional<std::uint64_t> burn_in;
  std::string mode = "cumulative";
  std::uint64_t samples = 10'000;
  std::string census;
};

Outcome cmd_pra(const Common& c, const PraArgs& a) {
  auto bb = make_backend(a.backend);
  auto gens = a.gens.empty() ? bb->standard_generators() : parse_list(*bb, a.gens);
  const std::size_t k = a.k.value_or(ProductReplacement::default_k(gens.size()));
  const std::uint64_t burn = a.burn_in.value_or(ProductReplacement::default_burn_in(k));
  const PraMode mode = a.mode == "component" ? PraMode::Component : PraMode::Cumulative;

  auto parts = run_workers<SampleCensus>(c.threads, [&](unsigned w) {
    ProductReplacement pra(bb, gens, k, c.seed ^ w);
    pra.burn_in(burn);
    SampleCensus census;
    for (std::uint64_t s = share(a.samples, c.threads, w); s > 0; --s) census.add(pra.next(mode));
    return census;
  });
  const auto census = merge_all(parts);
  Outcome o;
  o.multiplications = bb->multiplications();
  const auto h = enumerate_if_small(*bb, gens);
  o.config = {{"backend", bb->describe()}, {"gens", format_list(*bb, gens)}, {"k", k},
              {"burn_in", burn}, {"mode", a.mode}, {"samples", a.samples}};
  o.result = census_summary(census, h ? &*h : nullptr);
  if (auto p = write_census(a.census, census); !p.empty()) o.side_files["census"] = p;
  return o;
}

struct NormalClosureArgs {
  std::string backend;
  std::vector<std::string> ambient_gens;
  std::vector<std::string> normal_gens;
  std::optional<std::size_t> k;
  std::uint64_t samples = 100'000;
  std::uint64_t discard = 1000;
  double conjugated_share = 0.5;
  std::string walk = "ac";
  std::string census;
};

Outcome cmd_normal_closure(const Common& c, const NormalClosureArgs& a) {
  auto bb = make_backend(a.backend);
  auto ambient = a.ambient_gens.empty() ? bb->standard_generators() : parse_list(*bb, a.ambient_gens);
  auto normal = parse_list(*bb, a.normal_gens);
  if (normal.empty()) throw ConfigError("--normal-gens is required");
  const std::size_t k = a.k.value_or(ProductReplacement::default_k(normal.size()));

  auto parts = run_workers<SampleCensus>(c.threads, [&](unsigned w) {
    const std::uint64_t seed = c.seed ^ w;
    auto conj = make_pra_source(bb, ambient, derived_seed(seed));
    std::unique_ptr<RandomSource> walk;
    if (a.walk == "cayley")
      walk = std::make_unique<CayleyConjugateWalk>(bb, std::move(conj), normal, seed);
    else
      walk = std::make_unique<AndrewsCurtis>(bb, std::move(conj), normal, k, seed, a.conjugated_share);
    for (std::uint64_t s = 0; s < a.discard; ++s) walk->next();
    SampleCensus census;
    for (std::uint64_t s = share(a.samples, c.threads, w); s > 0; --s) census.add(walk->next());
    return census;
  });
  const auto census = merge_all(parts);
  Outcome o;
  o.multiplications = bb->multiplications();
  std::optional<EnumeratedGroup> n;
  if (auto x = enumerate_if_small(*bb, ambient)) n = normal_closure_bruteforce(*x, normal);
  o.config = {{"backend", bb->describe()},        {"ambient_gens", format_list(*bb, ambient)},
              {"normal_gens", format_list(*bb, normal)}, {"k", k},
              {"samples", a.samples},             {"discard", a.discard},
              {"conjugated_share", a.conjugated_share}, {"walk", a.walk}};
  o.result = census_summary(census, n ? &*n : nullptr);
  if (auto p = write_census(a.census, census); !p.empty()) o.side_files["census"] = p;
  return o;
}

struct CentralizerArgs {
  std::string backend;
  std::string involution;
  std::vector<std::string> ambient_gens;
  std::string mode = "odd";
  std::uint64_t rejection_budget = 256;
  std::optional<std::uint64_t> discard;
  std::uint64_t samples = 10'000;
  std::string source = "pra";
  std::string census;
};

CentralizerMode parse_mode(const std::string& m) {
  if (m == "even") return CentralizerMode::Even;
  if (m == "mixed") return CentralizerMode::Mixed;
  return CentralizerMode::Odd;
}

std::unique_ptr<RandomSource> make_source(const std::string& kind,
                                          const std::shared_ptr<const BlackBox>& bb,
                                          const std::vector<GroupElement>& gens,
                                          const std::optional<EnumeratedGroup>& whole,
                                          std::uint64_t seed) {
  if (kind == "uniform") {
    if (!whole) throw ConfigError("--source uniform needs a group small enough to enumerate");
    return std::make_unique<UniformSource>(whole->shared_elements(), seed);
  }
  return make_pra_source(bb, gens, seed);
}

Outcome cmd_centralizer(const Common& c, const CentralizerArgs& a) {
  auto bb = make_backend(a.backend);
  const auto i = bb->parse(a.involution);
  auto gens = a.ambient_gens.empty() ? bb->standard_generators() : parse_list(*bb, a.ambient_gens);
  const auto mode = parse_mode(a.mode);
  std::uint64_t discard = 100;
  if (a.discard) discard = *a.discard;
  else if (auto sym = std::dynamic_pointer_cast<const PermutationGroup>(bb))
    discard = transposition_discard(sym->degree());
  if (mode == CentralizerMode::Odd && !a.discard) discard = 0;
  const CentralizerOptions opts{mode, a.rejection_budget, discard};

  const auto whole = enumerate_if_small(*bb, gens);
  struct Part {
    SampleCensus census;
    std::uint64_t draws, undefined;
  };
  auto parts = run_workers<Part>(c.threads, [&](unsigned w) {
    CentralizerOracle oracle(bb, i, make_source(a.source, bb, gens, whole, c.seed ^ w), opts);
    SampleCensus census;
    for (std::uint64_t s = share(a.samples, c.threads, w); s > 0; --s) {
      auto y = oracle.next();
      if (bb->multiply(y, i) != bb->multiply(i, y))
        throw std::logic_error("centraliser oracle emitted an element not commuting with i");
      census.add(y);
    }
    return Part{std::move(census), oracle.draws(), oracle.undefined()};
  });
  SampleCensus census;
  std::uint64_t draws = 0, undefined = 0;
  for (const auto& p : parts) {
    census.merge(p.census);
    draws += p.draws;
    undefined += p.undefined;
  }
  Outcome o;
  o.multiplications = bb->multiplications();

  // Target subgroup: C(i) for odd and mixed modes, C°(i) for even mode.
  std::optional<EnumeratedGroup> target;
  if (whole) {
    if (mode == CentralizerMode::Even) {
      std::vector<GroupElement> z0;
      for (const auto& x : whole->elements())
        if (auto z = zeta0(*bb, i, x)) z0.push_back(*z);
      target = EnumeratedGroup::closure(*bb, z0.empty() ? std::vector{bb->identity()} : z0);
    } else {
      target = centralizer_bruteforce(*whole, i);
    }
  }
  o.config = {{"backend", bb->describe()}, {"involution", bb->format(i)},
              {"ambient_gens", format_list(*bb, gens)}, {"mode", a.mode},
              {"rejection_budget", a.rejection_budget}, {"discard", discard},
              {"samples", a.samples}, {"source", a.source}};
  o.result = census_summary(census, target ? &*target : nullptr);
  o.result["target"] = mode == CentralizerMode::Even ? "C0(i)" : "C(i)";
  o.result["draws"] = draws;
  o.result["undefined_draws"] = undefined;

  // Conjugation invariance under a few elements of C(i): all of C(i) when it
  // is small, otherwise the first 16 oracle-independent uniform picks.
  if (whole) {
    const auto cent = centralizer_bruteforce(*whole, i);
    std::vector<GroupElement> conj;
    if (cent.size() <= 64) {
      conj = cent.elements();
    } else {
      Rng rng(derived_seed(c.seed));
      for (int s = 0; s < 16; ++s) conj.push_back(cent[rng.bounded(cent.size())]);
    }
    o.result["conjugation_invariance"] = conjugation_invariance(census, *bb, conj);
    o.result["centralizer_order"] = cent.size();
  }
  if (auto p = write_census(a.census, census); !p.empty()) o.side_files["census"] = p;
  return o;
}

struct MembershipArgs {
  std::string backend;
  std::vector<std::string> subgroup_gens;
  std::string element;
  std::string equal_to;
  std::uint64_t samples = default_membership_samples;
};

Outcome cmd_membership(const Common& c, const MembershipArgs& a) {
  auto bb = make_backend(a.backend);
  auto ygens = parse_list(*bb, a.subgroup_gens);
  if (ygens.empty()) throw ConfigError("--subgroup-gens is required");
  const auto u = bb->parse(a.element);
  std::optional<GroupElement> v;
  if (!a.equal_to.empty()) v = bb->parse(a.equal_to);
  const auto order = backend_order(*bb);

  auto parts = run_workers<MembershipVerdict>(c.threads, [&](unsigned w) {
    const std::uint64_t k = share(a.samples, c.threads, w);
    if (k == 0) return MembershipVerdict{MembershipKind::ProbablyOut, 0, 0};
    auto src = make_pra_source(bb, ygens, c.seed ^ w);
    return v ? quotient_equal(*bb, *src, order, u, *v, k) : contains(*bb, *src, order, u, k);
  });
  std::uint64_t d = 0, used = 0;
  for (const auto& p : parts) {
    d = std::gcd(d, p.witness_gcd);
    used += p.samples_used;
  }
  const bool in = d == 1;
  Outcome o;
  o.multiplications = bb->multiplications();
  o.config = {{"backend", bb->describe()}, {"subgroup_gens", format_list(*bb, ygens)},
              {"element", bb->format(u)}, {"samples", a.samples}};
  if (v) o.config["equal_to"] = bb->format(*v);
  o.result = {{"verdict", in ? "definite-in" : "probably-out"},
              {"witness_gcd", d},
              {"samples_used", used}};
  return o;
}

struct MillerRabinArgs {
  std::uint64_t n = 0;
  std::uint32_t rounds = 20;
};

Outcome cmd_miller_rabin(const Common& c, const MillerRabinArgs& a) {
  if (a.n < 3 || a.n % 2 == 0) throw ConfigError("--n must be odd and >= 3");
  const ModularUnits units(a.n);
  auto parts = run_workers<PrimalityVerdict>(c.threads, [&](unsigned w) {
    const auto r = static_cast<std::uint32_t>(share(a.rounds, c.threads, w));
    if (r == 0) return PrimalityVerdict{PrimalityVerdict::Kind::ProbablyPrime, 0, RoundOutcome::Pass, {}};
    return miller_rabin(units, r, c.seed ^ w);
  });
  // Any composite verdict wins; the lowest-numbered worker's is reported.
  std::uint32_t rounds = 0;
  std::optional<PrimalityVerdict> composite;
  for (const auto& p : parts) {
    rounds += p.rounds;
    if (p.kind == PrimalityVerdict::Kind::Composite && !composite) composite = p;
  }
  Outcome o;
  o.config = {{"n", a.n}, {"rounds", a.rounds}};
  if (composite) {
    const std::uint64_t x = *composite->witness;
    o.result = {{"verdict", "composite"},
                {"rounds_run", rounds},
                {"witness", x},
                {"reason", round_outcome_name(composite->reason)}};
    if (composite->reason == RoundOutcome::SharedFactor) {
      o.result["factor"] = std::gcd(x, a.n);
    } else if (composite->reason == RoundOutcome::NonInvolution) {
      const auto y = units.residue(involution_from(units, units.from_residue(x)));
      const auto [f1, f2] = factor_from_involution(a.n, y);
      o.result["involution"] = y;
      o.result["factors"] = {f1, f2};
    }
  } else {
    o.result = {{"verdict", "probably-prime"},
                {"rounds_run", rounds},
                {"error_bound", std::ldexp(1.0, -2 * static_cast<int>(rounds))},
                {"error_bound_exact", "4^-" + std::to_string(rounds)}};
  }
  o.multiplications = units.multiplications();
  return o;
}

struct FactorArgs {
  std::uint64_t n = 0;
  std::uint64_t involution = 0;
};

Outcome cmd_factor(const Common&, const FactorArgs& a) {
  const auto [f1, f2] = factor_from_involution(a.n, a.involution);
  Outcome o;
  o.config = {{"n", a.n}, {"involution", a.involution}};
  o.result = {{"factors", {f1, f2}}};
  return o;
}

struct OddShareArgs {
  std::string backend;
  std::string involution;
  std::vector<std::string> ambient_gens;
  std::uint64_t samples = 100'000;
  std::string source = "pra";
  std::uint64_t budget = 1000;
};

Outcome cmd_odd_share(const Common& c, const OddShareArgs& a) {
  auto bb = make_backend(a.backend);
  auto gens = a.ambient_gens.empty() ? bb->standard_generators() : parse_list(*bb, a.ambient_gens);
  const auto whole = enumerate_if_small(*bb, gens);
  GroupElement i = bb->identity();
  if (!a.involution.empty()) {
    i = bb->parse(a.involution);
  } else {
    auto src = make_source(a.source, bb, gens, whole, derived_seed(c.seed));
    i = find_involution(*bb, *src, a.budget);
  }
  if (bb->is_identity(i) || !bb->is_identity(bb->multiply(i, i)))
    throw ConfigError("--involution must satisfy i^2 = 1, i != 1");

  auto parts = run_workers<ShareEstimate>(c.threads, [&](unsigned w) {
    const std::uint64_t t = share(a.samples, c.threads, w);
    if (t == 0) return ShareEstimate{};
    auto src = make_source(a.source, bb, gens, whole, c.seed ^ w);
    return odd_order_share(*bb, i, *src, t);
  });
  std::uint64_t trials = 0, odd = 0;
  for (const auto& p : parts) {
    trials += p.trials;
    odd += p.odd;
  }
  const double p = static_cast<double>(odd) / static_cast<double>(trials);
  const double se = std::sqrt(p * (1 - p) / static_cast<double>(trials));
  Outcome o;
  o.multiplications = bb->multiplications();
  o.config = {{"backend", bb->describe()}, {"involution", bb->format(i)},
              {"ambient_gens", format_list(*bb, gens)}, {"samples", a.samples},
              {"source", a.source}};
  o.result = {{"trials", trials}, {"odd", odd}, {"estimate", p}, {"standard_error", se}};
  if (whole) {
    const auto ex = odd_order_share_exact(*whole, i);
    o.result["exact"] = {{"odd", ex.odd}, {"total", ex.total}, {"value", ex.value()}};
    if (se > 0) o.result["z_score"] = (p - ex.value()) / se;
  }
  return o;
}

// Walk measures for tv-exact and mixing-time.
struct Measure {
  ExactDistribution p;
  std::string convention;
};

Measure build_measure(const BlackBox& bb, const std::string& dist,
                      const std::vector<GroupElement>& gens) {
  if (dist == "transpositions" || dist == "transpositions-uniform") {
    auto sym = dynamic_cast<const PermutationGroup*>(&bb);
    if (!sym) throw ConfigError("--dist " + dist + " needs a sym:N backend");
    const bool lazy = dist == "transpositions";
    return {transposition_measure(*sym, lazy),
            lazy ? "lazy: identity 1/n, each transposition 2/n^2; compared with uniform on Sym_n"
                 : "uniform on transpositions; P^{*k} compared with uniform on the coset of "
                   "sign (-1)^k"};
  }
  if (dist == "generators" || dist == "lazy-generators") {
    if (gens.empty()) throw ConfigError("--dist " + dist + " needs --gens");
    const bool lazy = dist == "lazy-generators";
    std::map<GroupElement, Rational> m;
    const Rational each(1, static_cast<long long>(gens.size() * (lazy ? 2 : 1)));
    for (const auto& g : gens) m[g] += each;
    if (lazy) m[bb.identity()] += Rational(1, 2);
    return {ExactDistribution(std::move(m)),
            lazy ? "half identity, half uniform on the generators; compared with uniform on <gens>"
                 : "uniform on the generators; compared with uniform on <gens>"};
  }
  throw ConfigError("unknown --dist " + dist);
}

// Target of the walk at step k.
std::vector<GroupElement> target_at(const EnumeratedGroup& g, const std::string& dist,
                                    std::uint64_t k) {
  if (dist != "transpositions-uniform") return g.elements();
  const auto& sym = dynamic_cast<const PermutationGroup&>(g.box());
  std::vector<GroupElement> coset;
  for (const auto& x : g.elements()) {
    auto img = sym.images(x);
    int inv = 0;
    for (std::size_t s = 0; s < img.size(); ++s)
      for (std::size_t t = s + 1; t < img.size(); ++t) inv += img[s] > img[t];
    if ((inv % 2) == static_cast<int>(k % 2)) coset.push_back(x);
  }
  return coset;
}

struct TvArgs {
  std::string backend;
  std::string dist = "transpositions";
  std::vector<std::string> gens;
  std::uint64_t k = 1;
  std::string dist_out;
};

Outcome cmd_tv_exact(const Common&, const TvArgs& a) {
  auto bb = make_backend(a.backend);
  if (a.k == 0) throw ConfigError("--k must be >= 1");
  auto gens = parse_list(*bb, a.gens);
  const auto m = build_measure(*bb, a.dist, gens);
  std::vector<GroupElement> support;
  for (const auto& [x, w] : m.p.masses()) support.push_back(x);
  const auto g = enumerate_if_small(*bb, support);
  if (!g) throw NumericGuardError("the walk's group is too large to enumerate");
  const auto target = target_at(*g, a.dist, a.k);

  Outcome o;
  o.config = {{"backend", bb->describe()}, {"dist", a.dist}, {"k", a.k}};
  if (!gens.empty()) o.config["gens"] = format_list(*bb, gens);
  o.result = {{"convention", m.convention}, {"group_order", g->size()},
              {"target_size", target.size()}};
  Distribution pk;
  if (g->size() <= kExactLimit) {
    const auto pk_exact = convolution_power(m.p, a.k, *bb);
    const auto tv = tv_distance(pk_exact, ExactDistribution::uniform(target));
    o.result["arithmetic"] = "exact";
    o.result["tv"] = tv.convert_to<double>();
    o.result["tv_exact"] = tv.str();
    pk = pk_exact.to_floating();
  } else {
    const DenseDistribution p = DenseDistribution::from(*g, m.p.to_floating());
    DenseDistribution acc = p;
    for (std::uint64_t s = 1; s < a.k; ++s) acc = convolve(p, acc);
    pk = acc.to_sparse();
    o.result["arithmetic"] = "floating";
    o.result["tv"] = tv_distance(pk, Distribution::uniform(target));
  }
  o.multiplications = bb->multiplications();
  if (!a.dist_out.empty()) {
    std::ofstream f(a.dist_out);
    if (!f) throw ConfigError("cannot open " + a.dist_out + " for writing");
    write_distribution_csv(f, pk);
    o.side_files["distribution"] = a.dist_out;
  }
  return o;
}

struct MixingArgs {
  std::string backend;
  std::string dist = "transpositions";
  std::vector<std::string> gens;
  double threshold = 1.0 / std::exp(1.0);
  std::uint64_t k_cap = 10'000;
};

Outcome cmd_mixing_time(const Common&, const MixingArgs& a) {
  auto bb = make_backend(a.backend);
  auto gens = parse_list(*bb, a.gens);
  const auto m = build_measure(*bb, a.dist, gens);
  std::vector<GroupElement> support;
  for (const auto& [x, w] : m.p.masses()) support.push_back(x);
  const auto g = enumerate_if_small(*bb, support);
  if (!g) throw NumericGuardError("the walk's group is too large to enumerate");
  const auto p = DenseDistribution::from(*g, m.p.to_floating());
  const std::uint64_t k = mixing_time(p, a.threshold, a.k_cap);
  Outcome o;
  o.config = {{"backend", bb->describe()}, {"dist", a.dist}, {"threshold", a.threshold},
              {"k_cap", a.k_cap}};
  if (!gens.empty()) o.config["gens"] = format_list(*bb, gens);
  o.result = {{"convention", m.convention}, {"group_order", g->size()}, {"mixing_time", k},
              {"tv_profile", tv_to_uniform_profile(p, k)}};
  o.multiplications = bb->multiplications();
  return o;
}

// ---------------------------------------------------------------------------

void emit(const Common& c, const std::string& command, const Outcome& o, double seconds,
          std::ostream& out) {
  json report;
  report["command"] = command;
  report["config"] = o.config;
  const json echo = common_echo(c);
  for (const auto& [key, value] : echo.items()) report["config"][key] = value;
  report["seed"] = c.seed;
  report["seed_source"] = c.seed_source;
  report["multiplications"] = o.multiplications;
  report["result"] = o.result;
  if (!o.side_files.empty()) report["side_files"] = o.side_files;
  if (!c.no_timing) report["timing"] = {{"elapsed_seconds", seconds}};
  const std::string text = report.dump(2) + "\n";
  if (c.output.empty()) {
    out << text;
  } else {
    std::ofstream f(c.output);
    if (!f) throw ConfigError("cannot open " + c.output + " for writing");
    f << text;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Black-box group algorithms: random elements, centralisers, membership, primality"};
  app.require_subcommand(1, 1);
  Common common;
  std::function<Outcome()> action;

  auto list_opt = [](CLI::App* sub, const std::string& name, std::vector<std::string>& v,
                     const std::string& help) {
    return sub->add_option(name, v, help)->delimiter(';')->allow_extra_args();
  };

  PraArgs pra;
  {
    auto* s = app.add_subcommand("pra", "Product replacement sampler");
    s->add_option("--backend", pra.backend, "Group spec, e.g. sym:6")->required();
    list_opt(s, "--gens", pra.gens, "Generator literals (default: standard generators)");
    s->add_option("--k", pra.k, "Tuple size")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
    s->add_option("--burn-in", pra.burn_in, "Steps before the first output");
    s->add_option("--mode", pra.mode)->check(CLI::IsMember({"component", "cumulative"}));
    s->add_option("--samples", pra.samples);
    s->add_option("--census", pra.census, "CSV side file for the sample census");
    add_common(*s, common);
    s->callback([&] { action = [&] { return cmd_pra(common, pra); }; });
  }
  NormalClosureArgs nc;
  {
    auto* s = app.add_subcommand("normal-closure", "Random elements of a normal closure");
    s->add_option("--backend", nc.backend)->required();
    list_opt(s, "--ambient-gens", nc.ambient_gens, "Ambient generators (default: standard)");
    list_opt(s, "--normal-gens", nc.normal_gens, "Normal generators")->required();
    s->add_option("--k", nc.k)->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
    s->add_option("--samples", nc.samples);
    s->add_option("--discard", nc.discard);
    s->add_option("--conjugated-share", nc.conjugated_share)->check(CLI::Range(0.0, 1.0));
    s->add_option("--walk", nc.walk)->check(CLI::IsMember({"ac", "cayley"}));
    s->add_option("--census", nc.census);
    add_common(*s, common);
    s->callback([&] { action = [&] { return cmd_normal_closure(common, nc); }; });
  }
  CentralizerArgs ce;
  {
    auto* s = app.add_subcommand("centralizer", "Random elements of the centraliser of an involution");
    s->add_option("--backend", ce.backend)->required();
    s->add_option("--involution", ce.involution)->required();
    list_opt(s, "--ambient-gens", ce.ambient_gens, "Ambient generators (default: standard)");
    s->add_option("--mode", ce.mode)->check(CLI::IsMember({"odd", "even", "mixed"}));
    s->add_option("--rejection-budget", ce.rejection_budget)->check(CLI::PositiveNumber);
    s->add_option("--discard", ce.discard);
    s->add_option("--samples", ce.samples);
    s->add_option("--source", ce.source)->check(CLI::IsMember({"pra", "uniform"}));
    s->add_option("--census", ce.census);
    add_common(*s, common);
    s->callback([&] { action = [&] { return cmd_centralizer(common, ce); }; });
  }
  MembershipArgs me;
  {
    auto* s = app.add_subcommand("membership", "Gcd-of-orders membership test");
    s->add_option("--backend", me.backend)->required();
    list_opt(s, "--subgroup-gens", me.subgroup_gens, "Generators of the subgroup Y")->required();
    s->add_option("--element", me.element)->required();
    s->add_option("--equal-to", me.equal_to, "Test element = this modulo Y instead");
    s->add_option("--samples", me.samples)->check(CLI::PositiveNumber);
    add_common(*s, common);
    s->callback([&] { action = [&] { return cmd_membership(common, me); }; });
  }
  MillerRabinArgs mr;
  {
    auto* s = app.add_subcommand("miller-rabin", "Primality by involution hunting");
    s->add_option("--n", mr.n)->required();
    s->add_option("--rounds", mr.rounds)->check(CLI::Range(1u, 100000u));
    add_common(*s, common);
    s->callback([&] { action = [&] { return cmd_miller_rabin(common, mr); }; });
  }
  FactorArgs fa;
  {
    auto* s = app.add_subcommand("factor", "Split n with a non-trivial square root of 1");
    s->add_option("--n", fa.n)->required();
    s->add_option("--involution", fa.involution)->required();
    add_common(*s, common);
    s->callback([&] { action = [&] { return cmd_factor(common, fa); }; });
  }
  OddShareArgs os;
  {
    auto* s = app.add_subcommand("odd-order-share", "Share of x with o(i i^x) odd");
    s->add_option("--backend", os.backend)->required();
    s->add_option("--involution", os.involution, "Default: found from random elements");
    list_opt(s, "--ambient-gens", os.ambient_gens, "Ambient generators (default: standard)");
    s->add_option("--samples", os.samples)->check(CLI::PositiveNumber);
    s->add_option("--source", os.source)->check(CLI::IsMember({"pra", "uniform"}));
    add_common(*s, common);
    s->callback([&] { action = [&] { return cmd_odd_share(common, os); }; });
  }
  TvArgs tv;
  {
    auto* s = app.add_subcommand("tv-exact", "TV distance of a convolution power to uniform");
    s->add_option("--backend", tv.backend)->required();
    s->add_option("--dist", tv.dist)->check(CLI::IsMember(
        {"transpositions", "transpositions-uniform", "generators", "lazy-generators"}));
    list_opt(s, "--gens", tv.gens, "Generators for --dist generators");
    s->add_option("--k", tv.k)->check(CLI::PositiveNumber);
    s->add_option("--dist-out", tv.dist_out, "CSV side file for P^{*k}");
    add_common(*s, common);
    s->callback([&] { action = [&] { return cmd_tv_exact(common, tv); }; });
  }
  MixingArgs mx;
  {
    auto* s = app.add_subcommand("mixing-time", "Least k with TV(P^{*k}, U) below a threshold");
    s->add_option("--backend", mx.backend)->required();
    s->add_option("--dist", mx.dist)->check(CLI::IsMember(
        {"transpositions", "transpositions-uniform", "generators", "lazy-generators"}));
    list_opt(s, "--gens", mx.gens, "Generators for --dist generators");
    s->add_option("--threshold", mx.threshold)->check(CLI::Range(0.0, 1.0));
    s->add_option("--k-cap", mx.k_cap)->check(CLI::PositiveNumber);
    add_common(*s, common);
    s->callback([&] { action = [&] { return cmd_mixing_time(common, mx); }; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    resolve_common(common);
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = action();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(common, command, o, secs, out);
    return kOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const ExponentError& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const StarvationError& e) {
    err << "starvation: " << e.what() << '\n';
    return kStarvation;
  } catch (const NumericGuardError& e) {
    err << "numeric guard: " << e.what() << '\n';
    return kNumericGuard;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace bbg::cli
