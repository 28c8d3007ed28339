#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bhlab/errors.hpp"
#include "bhlab/exponents.hpp"
#include "bhlab/io.hpp"
#include "bhlab/opnorm.hpp"
#include "bhlab/randforms.hpp"
#include "bhlab/scaling.hpp"
#include "bhlab/tensor.hpp"

namespace bhlab::cli {
namespace {

template <class Int>
Int parse_int(const std::string& s, const char* what) {
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ValidationError(std::string("cannot parse ") + what + " '" + s + "'");
  return v;
}

// Tokens are integers or inclusive ranges "a..b" / "a..b:step".
template <class Int>
std::vector<Int> parse_int_list(const std::vector<std::string>& tokens, const char* what) {
  std::vector<Int> out;
  for (const std::string& tok : tokens) {
    const auto dots = tok.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int<Int>(tok, what));
      continue;
    }
    const std::string hi_part = tok.substr(dots + 2);
    const auto colon = hi_part.find(':');
    const Int lo = parse_int<Int>(tok.substr(0, dots), what);
    const Int hi = parse_int<Int>(hi_part.substr(0, colon), what);
    const Int step = colon == std::string::npos ? Int{1}
                                                : parse_int<Int>(hi_part.substr(colon + 1), what);
    if (step == 0 || hi < lo) throw ValidationError(std::string("bad ") + what + " range '" + tok + "'");
    for (Int v = lo; v <= hi; v += step) {
      out.push_back(v);
      if (hi - v < step) break;
    }
  }
  return out;
}

std::optional<Partition> parse_partition(const std::vector<std::string>& tokens) {
  if (tokens.empty()) return std::nullopt;
  return Partition(parse_int_list<std::size_t>(tokens, "partition block"));
}

std::string exact_or(const std::optional<Rational>& exact, double v) {
  return exact ? exact->str() : format_double(v);
}

std::string witness_str(const std::vector<std::size_t>& w) {
  std::string s = "{";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i] + 1);
  }
  return s + "}";
}

struct CheckArgs {
  std::vector<std::string> exponents;
  std::size_t bh = 0;
  std::vector<std::string> partition;
  bool brute = false;
  bool json = false;
};

void run_check(const CheckArgs& a, std::ostream& out) {
  if (a.bh != 0 && !a.exponents.empty())
    throw ValidationError("give either exponents or --bh, not both");
  if (a.bh == 0 && a.exponents.empty()) throw ValidationError("no exponents given");
  const ExponentTuple q = a.bh != 0 ? classical_bh_tuple(a.bh) : ExponentTuple::parse(a.exponents);
  const auto partition = parse_partition(a.partition);
  if (partition && partition->size() != q.size())
    throw ValidationError("partition needs one block per exponent");

  const AdmissibilityReport r = a.brute ? is_admissible_bruteforce(q) : is_admissible_fast(q);
  if (a.json) {
    out << report_to_json(q, r, a.brute ? "bruteforce" : "fast", partition) << '\n';
    return;
  }
  out << "tuple=" << q.str() << " k=" << q.size();
  if (partition) out << " m=" << partition->total();
  out << " bound=" << format_double(r.bound) << '\n';
  if (r.admissible)
    out << "ADMISSIBLE deficit=" << exact_or(r.exact_max_deficit, r.max_deficit) << '\n';
  else
    out << "INADMISSIBLE witness=" << witness_str(r.witness)
        << " deficit=" << exact_or(r.exact_max_deficit, r.max_deficit) << '\n';
  const std::string full = exact_or(r.exact_full_sum, r.full_sum);
  out << "full_sum=" << full << " reduced_sum=" << exact_or(r.exact_reduced_sum, r.reduced_sum)
      << '\n';
  const bool full_ok = r.exact_full_sum
                           ? *r.exact_full_sum <= Rational(static_cast<std::int64_t>(q.size()) + 1, 2)
                           : r.full_sum <= r.bound + kBoundaryTolerance;
  if (!r.admissible && full_ok)
    out << "note: full-set sum " << full << " <= " << format_double(r.bound) << " holds, but subset "
        << witness_str(r.witness) << " fails\n";
}

struct MixedNormArgs {
  std::string in;
  std::vector<std::string> q;
  std::vector<std::string> partition;
  std::string flat;
  bool json = false;
};

void run_mixed_norm(const MixedNormArgs& a, unsigned threads, std::ostream& out) {
  CoefTensor t = read_tensor_file(a.in);
  if (const auto p = parse_partition(a.partition)) t = block_restrict(t, *p);
  double value = 0.0;
  if (!a.flat.empty()) {
    if (!a.q.empty()) throw ValidationError("give either --q or --flat, not both");
    value = flat_qnorm(t, ExponentTuple::parse(std::vector<std::string>{a.flat})[0]);
  } else {
    if (a.q.empty()) throw ValidationError("--q or --flat is required");
    value = mixed_norm(t, ExponentTuple::parse(a.q), threads);
  }
  if (a.json)
    out << "{\"mixed_norm\":" << format_double(value) << "}\n";
  else
    out << "mixed_norm=" << format_double(value) << '\n';
}

struct OpnormArgs {
  std::string in;
  std::string mode = "exact";
  std::uint64_t seed = 0;
  std::size_t restarts = 16;
  std::size_t budget = kDefaultVertexBitBudget;
  bool certificate = false;
};

void run_opnorm(const OpnormArgs& a, unsigned threads, std::ostream& out) {
  const CoefTensor t = read_tensor_file(a.in);
  NormEstimate est;
  if (a.mode == "exact")
    est = exact_real(t, {a.budget, threads});
  else if (a.mode == "ascent")
    est = ascent_lower(t, a.restarts, a.seed);
  else if (a.mode == "sandwich")
    est = sandwich(t, a.restarts, a.seed);
  else
    throw ValidationError("unknown mode '" + a.mode + "'");
  out << estimate_to_json(est, a.certificate) << '\n';
}

struct GenArgs {
  std::string family = "ksz";
  std::size_t k = 2;
  std::size_t n = 2;
  std::uint64_t seed = 0;
  std::string field = "real";
  std::size_t lift_to = 0;
  std::string out;
};

void run_gen(const GenArgs& a, unsigned threads, std::ostream& out) {
  const Field field = parse_field(a.field);
  CoefTensor t = [&] {
    if (a.family == "ksz") return sample_sign_tensor({a.k, a.n, a.seed, field}, kDefaultScalarBudget, threads);
    if (a.family == "littlewood") return sylvester_hadamard(a.n);
    if (a.family == "ones") return ones(a.k, a.n, field);
    if (a.family == "diagonal") return diagonal(a.k, a.n, field);
    if (a.family == "zero") return CoefTensor::zeros(a.k, a.n, field);
    throw ValidationError("unknown family '" + a.family + "'");
  }();
  if (a.lift_to != 0) t = lift(t, a.lift_to);
  const std::string text = tensor_to_json(t);
  if (a.out.empty() || a.out == "-") {
    out << text << '\n';
    return;
  }
  std::ofstream file(a.out);
  if (!file) throw ValidationError("cannot write '" + a.out + "'");
  file << text << '\n';
}

struct ScanArgs {
  std::vector<std::string> q;
  std::string family = "ksz";
  std::vector<std::string> n_grid;
  std::vector<std::string> seeds{"1..10"};
  std::vector<std::string> partition;
  std::size_t base_arity = 0;
  std::string norm_mode = "exact";
  std::size_t restarts = 16;
  std::size_t budget = kDefaultVertexBitBudget;
  std::string in;
  std::string out;
};

void run_scan(const ScanArgs& a, unsigned threads, std::ostream& out) {
  if (a.q.empty()) throw ValidationError("--q is required");
  const ExponentTuple q = ExponentTuple::parse(a.q);
  ExperimentSpec spec{.q = q,
                      .partition = parse_partition(a.partition).value_or(Partition::trivial(q.size()))};
  spec.family = parse_family(a.family);
  spec.norm_mode = parse_norm_mode(a.norm_mode);
  spec.seeds = parse_int_list<std::uint64_t>(a.seeds, "seed");
  spec.base_arity = a.base_arity;
  spec.ascent_restarts = a.restarts;
  spec.exact.bit_budget = a.budget;
  spec.threads = threads;
  if (spec.family == Family::file) {
    if (a.in.empty()) throw ValidationError("file family needs --in");
    spec.file_tensor = read_tensor_file(a.in);
    spec.n_grid = a.n_grid.empty() ? std::vector<std::size_t>{spec.file_tensor->side()}
                                   : parse_int_list<std::size_t>(a.n_grid, "grid size");
  } else {
    if (a.n_grid.empty()) throw ValidationError("--n-grid is required");
    spec.n_grid = parse_int_list<std::size_t>(a.n_grid, "grid size");
  }

  const ScalingResult result = run_experiment(spec);
  const std::string summary = scaling_summary_json(result, q);
  if (!a.out.empty()) {
    std::ofstream csv(a.out + ".csv");
    std::ofstream json(a.out + ".json");
    if (!csv || !json) throw ValidationError("cannot write outputs with prefix '" + a.out + "'");
    write_scaling_csv(csv, result);
    json << summary << '\n';
  }
  out << summary << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for mixed-norm inequalities of multilinear forms", "bhlab"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)")
      ->envname("BHLAB_THREADS");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Decide admissibility of an exponent tuple");
  check_cmd->add_option("exponents", check.exponents, "Exponents: numbers or a/b rationals");
  check_cmd->add_option("--bh", check.bh, "Use the classical tuple 2m/(m+1) repeated m times");
  check_cmd->add_option("--partition", check.partition, "Block sizes n_1..n_k");
  check_cmd->add_flag("--brute", check.brute, "Decide by enumerating every subset");
  check_cmd->add_flag("--json", check.json, "Emit a JSON report");

  MixedNormArgs mixed;
  auto* mixed_cmd = app.add_subcommand("mixed-norm", "Nested mixed l_q norm of a tensor file");
  mixed_cmd->add_option("--in", mixed.in, "Tensor JSON file")->required();
  mixed_cmd->add_option("--q", mixed.q, "Exponents q_1..q_k");
  mixed_cmd->add_option("--partition", mixed.partition, "Block-restrict before taking the norm");
  mixed_cmd->add_option("--flat", mixed.flat, "Single exponent applied to every index");
  mixed_cmd->add_flag("--json", mixed.json, "Emit JSON");

  OpnormArgs opn;
  auto* opnorm_cmd = app.add_subcommand("opnorm", "Operator norm of a multilinear form");
  opnorm_cmd->add_option("--in", opn.in, "Tensor JSON file")->required();
  opnorm_cmd->add_option("--mode", opn.mode, "exact | ascent | sandwich");
  opnorm_cmd->add_option("--seed", opn.seed, "Seed for ascent restarts");
  opnorm_cmd->add_option("--restarts", opn.restarts, "Ascent restarts");
  opnorm_cmd->add_option("--budget", opn.budget, "Max sign bits (m-1)*n for exact mode");
  opnorm_cmd->add_flag("--certificate", opn.certificate, "Include the maximizing arguments");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a tensor file");
  gen_cmd->add_option("--family", gen.family, "ksz | littlewood | ones | diagonal | zero");
  gen_cmd->add_option("--k", gen.k, "Arity");
  gen_cmd->add_option("--n", gen.n, "Side length");
  gen_cmd->add_option("--seed", gen.seed, "Seed for ksz");
  gen_cmd->add_option("--field", gen.field, "real | complex");
  gen_cmd->add_option("--lift-to", gen.lift_to, "Lift the form to this arity");
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Growth experiment over a grid of sides n");
  scan_cmd->add_option("--q", scan.q, "Exponents q_1..q_k");
  scan_cmd->add_option("--family", scan.family, "ksz | ksz_lifted | littlewood | file");
  scan_cmd->add_option("--n-grid", scan.n_grid, "Sides n: values or ranges a..b[:step]");
  scan_cmd->add_option("--seeds", scan.seeds, "Seeds: values or ranges a..b[:step]");
  scan_cmd->add_option("--partition", scan.partition, "Block sizes n_1..n_k");
  scan_cmd->add_option("--base-arity", scan.base_arity, "Arity of the form lifted by ksz_lifted");
  scan_cmd->add_option("--norm-mode", scan.norm_mode, "exact | sandwich");
  scan_cmd->add_option("--restarts", scan.restarts, "Ascent restarts for sandwich mode");
  scan_cmd->add_option("--budget", scan.budget, "Max sign bits (m-1)*n for exact norms");
  scan_cmd->add_option("--in", scan.in, "Tensor file for the file family");
  scan_cmd->add_option("--out", scan.out, "Write <prefix>.csv and <prefix>.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*check_cmd) run_check(check, out);
    else if (*mixed_cmd) run_mixed_norm(mixed, threads, out);
    else if (*opnorm_cmd) run_opnorm(opn, threads, out);
    else if (*gen_cmd) run_gen(gen, threads, out);
    else if (*scan_cmd) run_scan(scan, threads, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const NumericError& e) {
    err << "capacity: " << e.what() << '\n';
    return kExitCapacity;
  }
  return kExitOk;
}

}  // namespace bhlab::cli
