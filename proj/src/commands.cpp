#include "dequant/commands.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dequant/acceptance.hpp"
#include "dequant/census.hpp"
#include "dequant/error.hpp"
#include "dequant/optical.hpp"
#include "dequant/oracle.hpp"
#include "dequant/separability.hpp"
#include "dequant/solver.hpp"

namespace dequant::cli {

using nlohmann::ordered_json;

namespace {

// A failed item inside a command; carries the exit code it maps to.
struct CommandError {
  int code;
  std::string message;
};

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 || std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string join(const std::vector<unsigned>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

struct TableSource {
  std::string inline_table;
  std::string file;
  std::optional<unsigned> arity;

  void attach(CLI::App* cmd) {
    cmd->add_option("--f", inline_table, "Truth table: binary (0011) or hex (0x3c)");
    cmd->add_option("--file", file, "File with one truth table per line");
    cmd->add_option("--n", arity, "Declared arity (selects the trailing 2^n bits of a hex table)");
  }

  std::vector<std::string> lines() const {
    if (inline_table.empty() == file.empty()) {
      throw CommandError{exit_code::kUsage, "give exactly one of --f or --file"};
    }
    if (!inline_table.empty()) return {inline_table};
    std::ifstream in(file);
    if (!in) throw CommandError{exit_code::kUsage, "cannot open " + file};
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
      line.erase(std::find(line.begin(), line.end(), '#'), line.end());
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      const auto e = line.find_last_not_of(" \t\r");
      out.push_back(line.substr(b, e - b + 1));
    }
    if (out.empty()) throw CommandError{exit_code::kUsage, file + " holds no truth tables"};
    return out;
  }
};

// Runs `one` per table. A single inline table becomes the payload itself; a
// file yields {"count", "results"} with per-line errors kept in place. The
// exit code is the worst item's.
Report for_each_table(const TableSource& src,
                      const std::function<ordered_json(const BooleanFunction&)>& one) {
  Report r;
  const auto lines = src.lines();
  ordered_json results = ordered_json::array();
  for (const auto& text : lines) {
    ordered_json item;
    int code = exit_code::kOk;
    try {
      item = one(parse_truth_table(text, src.arity));
    } catch (const CommandError& e) {
      code = e.code;
      item = {{"f", text}, {"error", e.message}};
    } catch (const PromiseViolation& e) {
      code = exit_code::kPromise;
      item = {{"f", text}, {"error", e.what()}};
    } catch (const NumericalFailure& e) {
      code = exit_code::kPromise;
      item = {{"f", text}, {"error", e.what()}};
    } catch (const Error& e) {
      code = exit_code::kUsage;
      item = {{"f", text}, {"error", e.what()}};
    }
    if (lines.size() > 1) item["exit_code"] = code;
    r.exit_code = std::max(r.exit_code, code);
    results.push_back(std::move(item));
  }
  if (src.file.empty()) {
    r.payload = results[0];
  } else {
    r.payload["count"] = results.size();
    r.payload["results"] = std::move(results);
  }
  return r;
}

ordered_json solve_payload(const SolveResult& s, const BooleanFunction& f, const std::string& method) {
  ordered_json j;
  j["f"] = f.to_string();
  j["n"] = f.arity();
  j["method"] = method;
  j["verdict"] = std::string(to_string(s.verdict));
  j["oracle_calls"] = s.oracle_calls;
  if (s.identified_function) j["identified_function"] = s.identified_function->to_string();
  if (s.zero_probability) j["zero_probability"] = *s.zero_probability;
  if (!s.complex_outputs.empty()) {
    ordered_json outs = ordered_json::array();
    for (const auto& w : s.complex_outputs) outs.push_back(format_complex(w));
    j["outputs"] = std::move(outs);
  }
  j["trace"] = s.trace;
  return j;
}

[[noreturn]] void no_separable_dequantisation(const BooleanFunction& f, const std::string& method) {
  std::string why = "no separable de-quantisation: the " + method +
                    " solver needs n <= 2. From n = 3 on, valid functions can leave the "
                    "register entangled after one query (only " +
                    count_separable(f.arity()).get_str() + " of " + count_valid(f.arity()).get_str() +
                    " valid functions at n = " + std::to_string(f.arity()) + " give product states)";
  if (f.arity() <= max_qubits() && is_valid(f)) {
    const auto outcome = factor_product_state(oracle_output_state(f));
    if (const auto* e = std::get_if<Entangled>(&outcome)) {
      why += "; this f is entangled at qubit " + std::to_string(e->failing_qubit);
    } else {
      why += "; this f is separable, try --method dequantised";
    }
  }
  throw CommandError{exit_code::kUsage, why};
}

ordered_json solve_one(const BooleanFunction& f, const std::string& method) {
  const unsigned n = f.arity();
  if (method == "quantum") return solve_payload(solve_dj_quantum(f), f, method);
  if (method == "classical") {
    if (n == 1) return solve_payload(solve_deutsch_classical(f), f, method);
    if (n == 2) return solve_payload(solve_dj2_classical(f), f, method);
    no_separable_dequantisation(f, method);
  }
  if (method == "optical") {
    if (!is_valid(f)) throw PromiseViolation("promise violated: f is neither constant nor balanced");
    if (n == 1) return solve_payload(optical::optical_deutsch(f), f, method);
    if (n == 2) return solve_payload(optical::optical_dj2(f), f, method);
    no_separable_dequantisation(f, method);
  }
  // dequantised
  const auto outcome = extract_product_oracle(f);
  if (const auto* e = std::get_if<Entangled>(&outcome)) {
    throw CommandError{exit_code::kPromise, "entangled: the one-query state of " + f.to_string() +
                                                " does not factor (qubit " +
                                                std::to_string(e->failing_qubit) +
                                                "), so no product-oracle de-quantisation exists"};
  }
  const auto& oracle = std::get<ClassicalVectorOracle>(outcome);
  const auto dist = run_dequantised(oracle, deutsch_jozsa_flow(n));
  const double p0 = dist.probability(0);
  SolveResult s{Verdict::Constant, std::nullopt, oracle.queries(), p0, dist, {}, {}};
  s.trace = {"extract per-qubit unitaries", "run H, query, H on " + std::to_string(n) + " two-component vectors",
             "p(0...0) = " + std::to_string(p0)};
  if (p0 < 1e-9) {
    s.verdict = Verdict::Balanced;
  } else if (!(p0 > 1.0 - 1e-9)) {
    throw NumericalFailure("de-quantised outcome is not deterministic");
  }
  return solve_payload(s, f, method);
}

ordered_json classify_one(const BooleanFunction& f) {
  const auto c = classify(f);
  return {{"f", f.to_string()}, {"n", f.arity()}, {"kind", std::string(to_string(c.kind))},
          {"ones", c.ones_count}};
}

ordered_json separability_one(const BooleanFunction& f) {
  const unsigned n = f.arity();
  ordered_json j = classify_one(f);
  const auto s = oracle_output_state(f);
  const auto outcome = factor_product_state(s);
  j["separable"] = is_product(outcome);

  if (n >= 2) {
    const auto rep = pair_product_invariant(s);
    ordered_json ppi;
    ppi["precondition_met"] = rep.precondition_met;
    ppi["invariant"] = rep.invariant;
    ppi["exact"] = rep.exact;
    ordered_json levels = ordered_json::array();
    for (const auto& level : rep.levels) {
      ordered_json l;
      l["k"] = level.k;
      l["consistent"] = level.consistent;
      if (level.consistent) l["c_k"] = format_complex(level.constant);
      if (level.violation) {
        const auto& v = *level.violation;
        l["violation"] = "a" + std::to_string(v.a) + "*a" + std::to_string(v.a_partner) + " != a" +
                         std::to_string(v.b) + "*a" + std::to_string(v.b_partner);
      }
      levels.push_back(std::move(l));
    }
    ppi["levels"] = std::move(levels);
    j["ppi"] = std::move(ppi);
  }

  if (const auto* p = std::get_if<ProductFactorization>(&outcome)) {
    ordered_json factors = ordered_json::array();
    for (const auto& q : p->factors) {
      factors.push_back("(" + format_complex(q[0]) + ", " + format_complex(q[1]) + ")");
    }
    j["factors"] = std::move(factors);
    j["global_phase"] = format_complex(p->global_phase);
  } else {
    j["failing_qubit"] = std::get<Entangled>(outcome).failing_qubit;
  }

  const auto profile = entanglement_profile(s, 6);
  ordered_json prof;
  prof["qubit_separable"] = profile.qubit_separable;
  prof["no_qubit_separable"] = profile.no_qubit_separable;
  if (profile.no_cut_separable) {
    prof["no_cut_separable"] = *profile.no_cut_separable;
    ordered_json cuts = ordered_json::array();
    for (const auto& cut : profile.separable_cuts) cuts.push_back(join(cut));
    prof["separable_cuts"] = std::move(cuts);
  }
  j["entanglement"] = std::move(prof);
  return j;
}

ordered_json census_payload(const CensusReport& c) {
  ordered_json j;
  j["n"] = c.n;
  j["a_n"] = c.separable_count.get_str();
  j["b_n"] = c.valid_count.get_str();
  j["fraction"] = c.fraction.get_str();
  j["method"] = std::string(to_string(c.method));
  return j;
}

}  // namespace

Report run(const std::vector<std::string>& args) {
  CLI::App app("Constant-vs-balanced solvers, separability analysis and de-quantisation",
               "dequantlab");
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Emit a single JSON object");

  std::string command_echo = "dequantlab";
  for (const auto& a : args) command_echo += " " + a;

  auto* solve = app.add_subcommand("solve", "Decide constant vs balanced");
  TableSource solve_src;
  solve_src.attach(solve);
  std::string method = "quantum";
  solve->add_option("--method", method, "quantum | classical | optical | dequantised")
      ->check(CLI::IsMember({"quantum", "classical", "optical", "dequantised"}));

  auto* classify_cmd = app.add_subcommand("classify", "Constant, Balanced or Invalid");
  TableSource classify_src;
  classify_src.attach(classify_cmd);

  auto* sep = app.add_subcommand("separability", "Pair products, factorization, entanglement profile");
  TableSource sep_src;
  sep_src.attach(sep);

  auto* census_cmd = app.add_subcommand("census", "Count separable and valid functions");
  unsigned census_n = 0;
  bool brute = false;
  bool list = false;
  unsigned threads = 1;
  census_cmd->add_option("--n", census_n, "Arity")->required()->check(CLI::Range(1u, 30u));
  census_cmd->add_flag("--brute-force", brute, "Scan every truth table (n <= 4)");
  census_cmd->add_flag("--list", list, "List the separable functions");
  census_cmd->add_option("--threads", threads, "Scan threads (0 = hardware concurrency)");

  auto* witness_cmd = app.add_subcommand("witness", "Balanced function with no separable qubit");
  unsigned witness_n = 3;
  unsigned cut_scan = 6;
  witness_cmd->add_option("--n", witness_n, "Arity (>= 3)");
  witness_cmd->add_option("--cut-scan-max", cut_scan, "Largest n for the full bipartition scan");

  auto* su2 = app.add_subcommand("decompose-su2", "Quarter-half-quarter plate angles for an SU(2) matrix");
  std::vector<double> entries;
  su2->add_option("entries", entries, "Re/Im of u00 u01 u10 u11, row-major")->expected(8)->required();

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  acceptance::Options vopt;
  std::vector<int> only;
  verify->add_option("--max-n", vopt.max_n, "Cap for the exhaustive parts")->check(CLI::Range(1u, 4u));
  verify->add_option("--criterion", only, "Run only these criteria");
  verify->add_flag("--inject-fault", vopt.inject_fault)->group("");

  Report report;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    report.preformatted = subs.empty() ? app.help() : subs.front()->help();
    report.payload["help"] = report.preformatted;
    report.command = command_echo;
    report.format = json ? Format::Json : Format::Text;
    return report;
  } catch (const CLI::ParseError& e) {
    report.command = command_echo;
    report.format = json ? Format::Json : Format::Text;
    report.payload["error"] = e.what();
    report.exit_code = exit_code::kUsage;
    return report;
  }

  try {
    if (solve->parsed()) {
      report = for_each_table(solve_src, [&](const BooleanFunction& f) { return solve_one(f, method); });
    } else if (classify_cmd->parsed()) {
      report = for_each_table(classify_src, classify_one);
    } else if (sep->parsed()) {
      report = for_each_table(sep_src, separability_one);
    } else if (census_cmd->parsed()) {
      if (brute) {
        const auto c = brute_force_census(census_n, threads);
        report.payload = census_payload(c);
        const auto formula = formula_census(census_n);
        report.payload["formula_agreement"] =
            c.separable_count == formula.separable_count && c.valid_count == formula.valid_count;
        if (list) {
          ordered_json set = ordered_json::array();
          for (const auto& f : *c.separable_set) set.push_back(f.to_string());
          report.payload["separable_set"] = std::move(set);
        }
      } else {
        if (list && census_n > 10) throw InvalidArgument("--list is limited to n <= 10");
        const auto c = formula_census(census_n, list);
        report.payload = census_payload(c);
        if (list) {
          ordered_json set = ordered_json::array();
          for (const auto& f : *c.separable_set) set.push_back(f.to_string());
          report.payload["separable_set"] = std::move(set);
        }
      }
    } else if (witness_cmd->parsed()) {
      const auto f = proposition_witness(witness_n);
      const auto profile = entanglement_profile(oracle_output_state(f), cut_scan);
      report.payload = classify_one(f);
      report.payload["no_qubit_separable"] = profile.no_qubit_separable;
      if (profile.no_cut_separable) report.payload["no_cut_separable"] = *profile.no_cut_separable;
    } else if (su2->parsed()) {
      Matrix2 u;
      for (std::size_t i = 0; i < 4; ++i) u[i / 2][i % 2] = Complex(entries[2 * i], entries[2 * i + 1]);
      const auto a = optical::decompose_su2(u);
      report.payload["quarter_first"] = a.quarter_first;
      report.payload["half"] = a.half;
      report.payload["quarter_second"] = a.quarter_second;
      report.payload["residual"] = a.residual;
      report.payload["plate_order"] = "light meets Q(quarter_second), then H(half), then Q(quarter_first)";
    } else if (verify->parsed()) {
      std::vector<acceptance::CriterionResult> results;
      if (only.empty()) {
        results = acceptance::run_all(vopt);
      } else {
        for (int id : only) results.push_back(acceptance::run_criterion(id, vopt));
      }
      ordered_json list_json = ordered_json::array();
      ordered_json failed = ordered_json::array();
      for (const auto& c : results) {
        list_json.push_back({{"id", c.id},
                             {"title", c.title},
                             {"passed", c.passed},
                             {"seconds", c.seconds},
                             {"detail", c.detail}});
        if (!c.passed) failed.push_back(c.id);
      }
      report.payload["max_n"] = vopt.max_n;
      report.payload["criteria"] = std::move(list_json);
      report.payload["all_passed"] = failed.empty();
      report.payload["failed"] = std::move(failed);
      report.exit_code = report.payload["all_passed"].get<bool>() ? exit_code::kOk : exit_code::kPromise;
    }
  } catch (const CommandError& e) {
    report.payload = {{"error", e.message}};
    report.exit_code = e.code;
  } catch (const PromiseViolation& e) {
    report.payload = {{"error", e.what()}};
    report.exit_code = exit_code::kPromise;
  } catch (const NumericalFailure& e) {
    report.payload = {{"error", e.what()}};
    report.exit_code = exit_code::kPromise;
  } catch (const Error& e) {
    report.payload = {{"error", e.what()}};
    report.exit_code = exit_code::kUsage;
  }
  report.command = command_echo;
  report.format = json ? Format::Json : Format::Text;
  return report;
}

}  // namespace dequant::cli
