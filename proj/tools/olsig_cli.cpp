#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "olsig/audit.hpp"
#include "olsig/error.hpp"
#include "olsig/factorize.hpp"
#include "olsig/lscore.hpp"
#include "olsig/pgm.hpp"

using namespace olsig;
using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "olsig 1.0.0";

struct RunConfig {
  std::string command;
  std::string family = "O-";
  std::string kind = "minus";
  std::uint64_t q = 3;
  int m = -1, n = -1, k = 1;
  std::string mode = "exhaustive";
  std::uint64_t samples = 10000;
  std::uint64_t seed = 42;
  std::uint64_t budget = 1000000;
  std::string out, in;
  std::vector<std::uint32_t> index;
  bool sp2 = false;
  bool no_timing = false;
};

json config_json(const RunConfig& c) {
  return {{"command", c.command}, {"family", c.family}, {"kind", c.kind}, {"q", c.q},
          {"m", c.m},             {"n", c.n},           {"k", c.k},       {"mode", c.mode},
          {"samples", c.samples}, {"seed", c.seed},     {"budget", c.budget},
          {"out", c.out},         {"in", c.in},         {"index", c.index}, {"sp2", c.sp2}};
}

GroupDescriptor descriptor(const RunConfig& c) {
  if (c.n >= 0) return parse_descriptor(c.family, c.q, c.n, true);
  if (c.m < 0) throw Error(ErrorCode::InvalidArgument, "--m or --n is required");
  return parse_descriptor(c.family, c.q, c.m);
}

int dimension(const RunConfig& c, Kind kind) {
  if (c.n >= 0) return c.n;
  if (c.m < 0) throw Error(ErrorCode::InvalidArgument, "--m or --n is required");
  return kind == Kind::Odd ? 2 * c.m + 1 : 2 * c.m;
}

json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::Format, "cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Format, path + ": " + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::Format, "cannot write " + path);
  f << j.dump(1) << "\n";
}

std::string sizes_text(const std::vector<std::uint64_t>& s) {
  std::string t = "[";
  for (std::size_t i = 0; i < s.size(); ++i) t += (i ? "," : "") + std::to_string(s[i]);
  return t + "]";
}

VerifyOptions verify_options(const RunConfig& c) {
  VerifyOptions o;
  if (c.mode != "exhaustive" && c.mode != "sampled") throw Error(ErrorCode::InvalidArgument, "--mode must be exhaustive or sampled");
  o.exhaustive = c.mode == "exhaustive";
  o.samples = c.samples;
  o.seed = c.seed;
  o.budget = c.budget;
  return o;
}

struct Outcome {
  json result;
  std::vector<std::string> summary;
  int code = 0;
};

// ---------------------------------------------------------------------------

Outcome cmd_construct(const RunConfig& c) {
  Outcome o;
  const GroupDescriptor d = descriptor(c);
  const LogSignature ls = canonical_ls(d);
  const auto bound = min_length_bound(ls.claimed_order);
  o.result = {{"group", to_json(d)},
              {"order", ls.claimed_order},
              {"length", ls.length()},
              {"bound", bound.bound},
              {"block_sizes", ls.block_sizes()},
              {"tame", ls.decoder != nullptr},
              {"notes", ls.notes}};
  if (!d.projective()) {
    json levels = json::array();
    for (const auto& r : canonical_level_reports(d)) levels.push_back(to_json(r));
    o.result["levels"] = levels;
  }
  if (!c.out.empty()) write_json(c.out, to_json(ls));
  o.summary.push_back(d.name() + "(" + std::to_string(d.q) + ") n=" + std::to_string(d.n) + ": order " +
                      std::to_string(ls.claimed_order) + ", length " + std::to_string(ls.length()) + ", bound " +
                      std::to_string(bound.bound));
  o.summary.push_back("block sizes " + sizes_text(ls.block_sizes()));
  if (!c.out.empty()) o.summary.push_back("written to " + c.out);
  return o;
}

Outcome cmd_verify(const RunConfig& c) {
  Outcome o;
  if (c.in.empty()) throw Error(ErrorCode::InvalidArgument, "verify needs a signature file");
  const LogSignature ls = ls_from_json(read_json(c.in));
  const VerifyReport r = verify_ls(ls, verify_options(c));
  o.result = {{"group", to_json(ls.group)}, {"report", to_json(r)}};
  o.summary.push_back(std::string(r.valid ? "valid LS" : "NOT an LS") + " (" + r.mode + ", " +
                      std::to_string(r.checked) + " checked)");
  o.summary.push_back("length " + std::to_string(r.length) + ", bound " + std::to_string(r.bound) +
                      (r.mls ? ", MLS confirmed" : ", not minimal"));
  if (!r.witness.empty()) o.summary.push_back("witness: " + r.witness);
  o.code = r.valid ? 0 : 1;
  return o;
}

Outcome cmd_factor(const RunConfig& c) {
  Outcome o;
  const LogSignature ls = c.in.empty() ? canonical_ls(descriptor(c)) : ls_from_json(read_json(c.in));
  json items = json::array();
  std::uint64_t failures = 0;
  auto one = [&](const IndexVector& iv) {
    const Matrix g = ls.product(iv);
    DecodeStats st;
    json item = {{"indices", to_json(iv)}, {"rank", rank(iv, ls)}};
    try {
      const IndexVector got = tame_factor(g, ls, &st);
      item["factored"] = to_json(got);
      item["ok"] = got == iv;
    } catch (const Error& e) {
      item["error"] = e.what();
      item["ok"] = false;
    }
    item["lookups"] = st.table_lookups;
    item["discrete_logs"] = st.discrete_logs;
    failures += !item["ok"].get<bool>();
    return item;
  };
  if (!c.index.empty()) {
    items.push_back(one(c.index));
  } else {
    std::mt19937_64 rng(c.seed);
    std::uint64_t total = 1;
    for (const auto& b : ls.blocks) total *= b.size();
    for (std::uint64_t s = 0; s < c.samples; ++s) {
      const json item = one(unrank(rng() % total, ls));
      if (s < 5 || !item["ok"].get<bool>()) items.push_back(item);
    }
  }
  o.result = {{"group", to_json(ls.group)}, {"round_trips", c.index.empty() ? c.samples : 1},
              {"failures", failures},      {"shown", items}};
  o.summary.push_back(std::to_string(c.index.empty() ? c.samples : 1) + " unrank -> product -> tame_factor round trips, " +
                      std::to_string(failures) + " failures");
  o.code = failures ? 1 : 0;
  return o;
}

Outcome cmd_counts(const RunConfig& c) {
  Outcome o;
  const Kind kind = parse_kind(c.kind);
  const int n = dimension(c, kind);
  const QuadraticSpace V = QuadraticSpace::canonical(kind, field_for(c.q), n);
  const std::uint64_t counted = V.singular_points().size();
  const std::uint64_t formula = V.singular_point_count_formula();
  o.result = {{"kind", to_string(kind)}, {"q", c.q}, {"n", n}, {"enumerated", counted}, {"closed_form", formula},
              {"equal", counted == formula}};
  o.summary.push_back(std::to_string(counted));
  o.summary.push_back(std::string("closed form ") + std::to_string(formula) + (counted == formula ? ", equal" : ", MISMATCH"));
  o.code = counted == formula ? 0 : 1;
  return o;
}

Outcome cmd_spread_check(const RunConfig& c) {
  Outcome o;
  const Kind kind = parse_kind(c.kind);
  if (c.m < 0) throw Error(ErrorCode::InvalidArgument, "spread-check needs --m");
  const SpreadCheck s = spread_check(kind, c.q, c.m);
  o.result = to_json(s);
  o.summary.push_back(std::string(to_string(kind)) + " q=" + std::to_string(c.q) + " m=" + std::to_string(c.m) + ": " +
                      (s.ok ? "partition and sharp transitivity hold" : "FAILED"));
  if (!s.note.empty()) o.summary.push_back(s.note);
  o.code = s.ok ? 0 : 1;
  return o;
}

Outcome cmd_parabolic(const RunConfig& c) {
  Outcome o;
  const Kind kind = parse_kind(c.kind);
  const ParabolicCheck p = parabolic_check(kind, c.q, dimension(c, kind), c.k, c.budget);
  o.result = to_json(p);
  o.summary.push_back("|R| |Q| = " + std::to_string(p.radical) + " * " + std::to_string(p.levi) + " = " +
                      std::to_string(p.radical * p.levi) + ", |G|/|orbit| = " + std::to_string(p.group_order) + "/" +
                      std::to_string(p.orbit) + (p.ok ? ", equal" : ", MISMATCH"));
  o.code = p.ok ? 0 : 1;
  return o;
}

Outcome cmd_project(const RunConfig& c) {
  Outcome o;
  GroupDescriptor d = descriptor(c);
  if (d.projective()) d.family = d.lift_family();
  const LogSignature lift = canonical_ls(d);
  const LogSignature p = project_ls(lift);
  VerifyOptions vo = verify_options(c);
  const VerifyReport r = verify_ls(p, vo);
  o.result = {{"lift", to_json(d)},         {"group", to_json(p.group)},        {"order", p.claimed_order},
              {"block_sizes", p.block_sizes()}, {"notes", p.notes},          {"report", to_json(r)}};
  if (!c.out.empty()) write_json(c.out, to_json(p));
  o.summary.push_back(p.group.name() + " order " + std::to_string(p.claimed_order) + ": " +
                      (r.valid ? "valid LS" : "NOT an LS") + ", length " + std::to_string(r.length) + ", bound " +
                      std::to_string(r.bound));
  o.code = r.valid ? 0 : 1;
  return o;
}

Outcome cmd_pgm(const RunConfig& c) {
  Outcome o;
  const GroupDescriptor d = descriptor(c);
  const PgmKey key = keygen(d, c.seed);
  const PgmKey again = keygen(d, c.seed);
  const bool key_det = again.beta_ls.blocks == key.beta_ls.blocks;
  const std::uint64_t N = key.alpha_ls.claimed_order;
  const bool exhaustive = N <= c.budget && c.mode == "exhaustive";
  std::mt19937_64 rng(c.seed);
  std::set<std::uint64_t> image;
  std::uint64_t round_fail = 0, ct_det_fail = 0, checked = 0;
  const std::uint64_t count = exhaustive ? N : std::min(c.samples, N);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t m = exhaustive ? i : rng() % N;
    const std::uint64_t ct = encrypt(key, m);
    ++checked;
    if (exhaustive) image.insert(ct);
    if (decrypt(key, ct) != m) ++round_fail;
    if (i < 100 && encrypt(again, m) != ct) ++ct_det_fail;
  }
  const bool perm = exhaustive ? image.size() == N : round_fail == 0;
  json samples = json::array();
  for (std::uint64_t m = 0; m < std::min<std::uint64_t>(N, 5); ++m) samples.push_back({m, encrypt(key, m)});
  o.result = {{"group", to_json(d)},
              {"order", N},
              {"mode", exhaustive ? "exhaustive" : "sampled"},
              {"checked", checked},
              {"permutation", perm},
              {"decrypt_failures", round_fail},
              {"key_deterministic", key_det},
              {"ciphertext_deterministic", ct_det_fail == 0},
              {"first_ciphertexts", samples}};
  if (!c.out.empty()) write_json(c.out, to_json(key));
  const bool ok = perm && round_fail == 0 && key_det && ct_det_fail == 0;
  o.summary.push_back(std::string("encrypt ") + (exhaustive ? "is a permutation of Z_" : "injective on samples of Z_") +
                      std::to_string(N) + ": " + (perm ? "yes" : "NO"));
  o.summary.push_back("decrypt(encrypt(m)) = m: " + std::string(round_fail ? "NO" : "yes") +
                      "; deterministic key and ciphertexts: " + (key_det && ct_det_fail == 0 ? "yes" : "NO"));
  o.code = ok ? 0 : 1;
  return o;
}

Outcome cmd_omega(const RunConfig& c) {
  Outcome o;
  if (c.sp2) {
    const Omega3Check r = omega3_vs_sp2(c.q);
    o.result = to_json(r);
    o.summary.push_back("|Omega_3(" + std::to_string(c.q) + ")| = " + std::to_string(r.omega3) + ", |Sp_2(" +
                        std::to_string(c.q) + ")| = " + std::to_string(r.sp2) + (r.ok ? ", equal" : ", DIFFERENT"));
    o.code = r.ok ? 0 : 1;
    return o;
  }
  const Kind kind = parse_kind(c.kind);
  const OmegaAudit a = omega_audit(kind, c.q, dimension(c, kind), c.budget);
  o.result = to_json(a);
  if (a.agree())
    o.summary.push_back("even-rank criterion agrees with the commutator subgroup on all " + std::to_string(a.so_order) +
                        " elements of SO");
  else
    o.summary.push_back("even-rank criterion disagrees with the commutator subgroup on " +
                        std::to_string(a.disagreements) + " of " + std::to_string(a.so_order) + " elements of SO (it accepts " +
                        std::to_string(a.criterion_count) + ", [O,O] has " + std::to_string(a.oracle_order) + ")");
  o.summary.push_back("spinor-norm membership disagrees on " + std::to_string(a.spinor_disagreements) + " elements");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logarithmic signatures for finite orthogonal groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  RunConfig c;

  auto group_flags = [&](CLI::App* s) {
    s->add_option("--family", c.family, "O-, O+, Oodd, SO-, ..., POmegaodd");
    s->add_option("--q", c.q, "field size (odd prime power)");
    s->add_option("--m", c.m, "half rank");
    s->add_option("--n", c.n, "dimension (instead of --m)");
  };
  auto kind_flags = [&](CLI::App* s) {
    s->add_option("--kind", c.kind, "minus, plus or odd");
    s->add_option("--q", c.q, "field size (odd prime power)");
    s->add_option("--m", c.m, "half rank");
    s->add_option("--n", c.n, "dimension (instead of --m)");
  };
  auto check_flags = [&](CLI::App* s) {
    s->add_option("--mode", c.mode, "exhaustive or sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
    s->add_option("--samples", c.samples, "sample count");
    s->add_option("--seed", c.seed, "seed");
    s->add_option("--budget", c.budget, "largest order enumerated exhaustively");
  };

  std::map<std::string, Outcome (*)(const RunConfig&)> handlers;
  auto sub = [&](const std::string& name, const std::string& help, Outcome (*fn)(const RunConfig&)) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_flag("--no-timing", c.no_timing, "omit wall-clock timing from the report");
    handlers[name] = fn;
    return s;
  };

  auto* construct = sub("construct", "build the canonical LS of a group", cmd_construct);
  group_flags(construct);
  construct->add_option("--out", c.out, "write the LS as JSON");

  auto* verify = sub("verify", "verify an LS file", cmd_verify);
  verify->add_option("file", c.in, "LS file");
  verify->add_option("--in", c.in, "LS file");
  check_flags(verify);

  auto* factor = sub("factor", "tame factorization round trips", cmd_factor);
  group_flags(factor);
  factor->add_option("--in", c.in, "LS file instead of the canonical LS");
  factor->add_option("--index", c.index, "one index vector")->delimiter(',');
  check_flags(factor);

  auto* counts = sub("counts", "singular points: enumeration vs closed form", cmd_counts);
  kind_flags(counts);

  auto* spread = sub("spread-check", "partial spread and sharp transitivity of the construction", cmd_spread_check);
  kind_flags(spread);

  auto* para = sub("parabolic", "|R||Q| against orbit-stabilizer", cmd_parabolic);
  kind_flags(para);
  para->add_option("--k", c.k, "dimension of the stabilized subspace");
  para->add_option("--budget", c.budget, "largest order enumerated exhaustively");

  auto* project = sub("project", "project the SO/Omega LS onto the quotient by -I", cmd_project);
  group_flags(project);
  check_flags(project);
  project->add_option("--out", c.out, "write the projected LS as JSON");

  auto* pgm = sub("pgm-demo", "LS-keyed permutation demo", cmd_pgm);
  group_flags(pgm);
  check_flags(pgm);
  pgm->add_option("--out", c.out, "write the key as JSON");

  auto* omega = sub("omega-check", "even-rank criterion against the commutator subgroup", cmd_omega);
  kind_flags(omega);
  omega->add_flag("--sp2", c.sp2, "compare |Omega_3(q)| with |Sp_2(q)| instead");
  omega->add_option("--budget", c.budget, "closure cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  for (auto* s : app.get_subcommands()) c.command = s->get_name();

  json report = {{"version", kVersion}, {"config", config_json(c)}, {"seed", c.seed},
                 {"budgets", {{"budget", c.budget}, {"samples", c.samples}}}};
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = handlers.at(c.command)(c);
  } catch (const Error& e) {
    report["error"] = e.what();
    report["exit_code"] = 2;
    std::cout << report.dump(2) << "\n\nerror: " << e.what() << "\n";
    return 2;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report["result"] = out.result;
  report["exit_code"] = out.code;
  report["timing"] = c.no_timing ? json(nullptr) : json({{"wall_seconds", secs}});
  std::cout << report.dump(2) << "\n\n";
  for (const auto& line : out.summary) std::cout << line << "\n";
  return out.code;
}
