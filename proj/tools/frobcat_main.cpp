// Command-line frontend for the Frobenius decision library.
//
// Exit codes: 0 = yes / success, 1 = no, 2 = input error, 3 = oracle found
// an inconsistency between a verdict and its executable evidence.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "frobcat/category.hpp"
#include "frobcat/decision.hpp"
#include "frobcat/invariant.hpp"
#include "frobcat/mod_oracle.hpp"
#include "frobcat/set_oracle.hpp"

namespace {

using namespace frobcat;

std::vector<std::vector<int>> read_monoid_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open monoid table '" + path + "'");
  std::vector<int> numbers;
  std::string line;
  while (std::getline(in, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int v;
    while (ls >> v) numbers.push_back(v);
  }
  if (numbers.empty()) throw std::invalid_argument("monoid table '" + path + "' is empty");
  const int n = numbers[0];
  if (n < 1 || static_cast<size_t>(n) * n + 1 != numbers.size())
    throw std::invalid_argument("monoid table '" + path + "' must hold n followed by n*n entries");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = numbers[1 + a * n + b];
  return table;
}

FinCategory category_from_gen(const std::string& spec) {
  auto int_arg = [&spec](const std::string& prefix) {
    const std::string value = spec.substr(prefix.size());
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad generator spec '" + spec + "'");
    return std::stoi(value);
  };
  if (spec == "arrow") return arrow();
  if (spec == "idmon") return idempotent_monoid();
  if (spec.rfind("cyclic:", 0) == 0) return from_group_cyclic(int_arg("cyclic:"));
  if (spec.rfind("discrete:", 0) == 0) return discrete(int_arg("discrete:"));
  if (spec.rfind("parallel:", 0) == 0) return parallel(int_arg("parallel:"));
  if (spec.rfind("adjoin-unit:", 0) == 0) return adjoin_unit(category_from_gen(spec.substr(12)));
  if (spec.rfind("monoid-table:", 0) == 0) return from_monoid_table(read_monoid_table(spec.substr(13)));
  throw std::invalid_argument("unknown generator spec '" + spec + "'");
}

struct InputOptions {
  std::string path;
  std::string gen;

  std::string describe() const { return gen.empty() ? path : "gen:" + gen; }

  FinCategory load() const {
    if (gen.empty() == path.empty())
      throw std::invalid_argument("give exactly one of an input file or --gen");
    if (!gen.empty()) return category_from_gen(gen);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return parse_category(in);
  }
};

void add_input_options(CLI::App* cmd, InputOptions* input) {
  cmd->add_option("file", input->path, "category in the text format");
  cmd->add_option("--gen", input->gen,
                  "generated category: cyclic:<n> | discrete:<n> | arrow | parallel:<k> | idmon | "
                  "adjoin-unit:<spec> | monoid-table:<file>");
}

// Line-oriented `key: value` report; the machine mode prints exactly these
// lines, the human mode gets them too after a short banner.
struct Report {
  std::vector<std::pair<std::string, std::string>> lines;
  void add(const std::string& key, const std::string& value) { lines.emplace_back(key, value); }
  void add(const std::string& key, size_t value) { add(key, std::to_string(value)); }
  void print() const {
    for (const auto& [key, value] : lines) std::cout << key << ": " << value << "\n";
  }
};

std::string join_objects(const std::vector<int>& objects) {
  std::string out;
  for (int i : objects) out += (out.empty() ? "" : " ") + std::to_string(i);
  return out;
}

std::string slot_text(const FinCategory& cat, const InvariantSystem& is) {
  std::string out;
  for (int i = 0; i < is.n_objects; ++i)
    for (int j = 0; j < is.n_objects; ++j) {
      std::string members;
      for (int m : is.slot(i, j)) members += (members.empty() ? "" : ",") + cat.name(m);
      out += (out.empty() ? "" : " ") + ("S(" + std::to_string(i) + "," + std::to_string(j) + ")={" + members + "}");
    }
  return out;
}

void describe_certificate(const FinCategory& cat, const Verdict& verdict, Report& report) {
  report.add("certificate", certificate_kind(verdict));
  if (const auto* cert = verdict.cert<CertInvariantSystems>()) {
    for (const IsEvidence& ev : cert->per_component) {
      report.add("component", std::to_string(ev.component));
      report.add("is-cardinality", ev.cardinality);
      report.add("is-slots", slot_text(cat, ev.is));
    }
  } else if (const auto* cert = verdict.cert<CertNotConnected>()) {
    report.add("components", std::to_string(cert->partition.count));
  } else if (const auto* cert = verdict.cert<CertNotStronglyConnected>()) {
    report.add("component", std::to_string(cert->component));
    report.add("part-a", join_objects(cert->a));
    report.add("part-b", join_objects(cert->b));
  } else if (const auto* cert = verdict.cert<CertNoInvariantSystem>()) {
    report.add("component", std::to_string(cert->component));
    for (const SeedOutcome& seed : cert->trace)
      report.add("seed", cat.name(seed.seed) + " | " + (seed.passed ? "passed" : "failed") +
                             (seed.note.empty() ? "" : " | " + seed.note));
  } else if (const auto* cert = verdict.cert<CertCardinalityNotInvertible>()) {
    report.add("component", std::to_string(cert->component));
    std::string cards;
    for (size_t m : cert->cardinalities) cards += (cards.empty() ? "" : " ") + std::to_string(m);
    report.add("is-cardinalities", cards);
    report.add("ring", cert->ring.to_string());
  }
}

int run_validate(const InputOptions& input, bool machine) {
  const FinCategory cat = input.load();
  const ValidationReport result = validate(cat);
  Report report;
  report.add("command", "validate");
  report.add("input", input.describe());
  report.add("objects", static_cast<size_t>(cat.n_objects));
  report.add("morphisms", static_cast<size_t>(cat.n_morphisms()));
  report.add("valid", result.ok() ? "yes" : "no");
  for (const std::string& issue : result.issues) report.add("issue", issue);
  if (!machine && result.ok()) std::cout << "category is valid\n";
  if (machine || !result.ok()) report.print();
  return result.ok() ? 0 : 2;
}

int run_analyze(const InputOptions& input, bool machine) {
  const FinCategory cat = input.load();
  const ValidationReport valid = validate(cat);
  if (!valid.ok()) throw std::invalid_argument("invalid category: " + valid.issues.front());

  Report report;
  report.add("command", "analyze");
  report.add("input", input.describe());
  report.add("objects", static_cast<size_t>(cat.n_objects));
  report.add("morphisms", static_cast<size_t>(cat.n_morphisms()));
  const ComponentPartition parts = connected_components(cat);
  report.add("components", static_cast<size_t>(parts.count));
  for (int c = 0; c < parts.count; ++c) {
    const SubCategory sub = component_subcategory(cat, parts, c);
    report.add("component", std::to_string(c));
    report.add("component-objects", join_objects(sub.object_map));
    const FindIsResult found = find_is(sub.cat);
    report.add("strongly-connected", found.strongly_connected ? "yes" : "no");
    if (!found.strongly_connected) {
      std::vector<int> a, b;
      for (int i : found.witness_a) a.push_back(sub.object_map[i]);
      for (int i : found.witness_b) b.push_back(sub.object_map[i]);
      report.add("part-a", join_objects(a));
      report.add("part-b", join_objects(b));
      continue;
    }
    report.add("invariant-systems", found.all.size());
    for (const InvariantSystem& is : found.all) {
      report.add("is-cardinality", is.cardinality());
      report.add("is-slots", slot_text(sub.cat, is));
    }
    if (found.preferred) {
      const GroupData group = group_of(sub.cat, *found.preferred);
      report.add("group-order", static_cast<size_t>(group.order));
      const std::vector<int> e = idempotents(sub.cat, *found.preferred);
      std::string idem;
      for (size_t i = 0; i < e.size(); ++i)
        idem += (idem.empty() ? "" : " ") + ("e(" + std::to_string(sub.object_map[i]) + ")=" + sub.cat.name(e[i]));
      report.add("idempotents", idem);
      const std::vector<int> tau_table = tau(sub.cat, *found.preferred);
      std::string tau_text;
      for (int m = 0; m < sub.cat.n_morphisms(); ++m)
        tau_text += (tau_text.empty() ? "" : " ") + (sub.cat.name(m) + "->" + sub.cat.name(tau_table[m]));
      report.add("tau", tau_text);
    }
  }
  if (!machine) std::cout << "analysis of " << input.describe() << "\n";
  report.print();
  return 0;
}

int run_decide(const InputOptions& input, const std::string& target, const std::string& ring_text, bool machine) {
  const FinCategory cat = input.load();
  Verdict verdict;
  Report report;
  report.add("command", "decide");
  report.add("target", target);
  report.add("input", input.describe());
  if (target == "set") {
    verdict = decide_set(cat);
  } else {
    const RingSpec ring = RingSpec::parse(ring_text);
    report.add("ring", ring.to_string());
    verdict = decide_mod(cat, ring);
  }
  report.add("objects", static_cast<size_t>(cat.n_objects));
  report.add("morphisms", static_cast<size_t>(cat.n_morphisms()));
  report.add("verdict", verdict.frobenius ? "yes" : "no");
  report.add("reason", verdict_reason(verdict));
  describe_certificate(cat, verdict, report);
  if (!machine)
    std::cout << (target == "set" ? "Set-Frobenius: " : "module-Frobenius over " + ring_text + ": ")
              << (verdict.frobenius ? "yes" : "no") << " (" << verdict_reason(verdict) << ")\n";
  else
    report.print();
  return verdict.frobenius ? 0 : 1;
}

int run_oracle_set(const InputOptions& input, const SetOracleOptions& options, bool machine) {
  const FinCategory cat = input.load();
  const SetOracleReport result = sample_check_set(cat, options);
  Report report;
  report.add("command", "oracle");
  report.add("target", "set");
  report.add("input", input.describe());
  report.add("samples", static_cast<size_t>(options.n_samples));
  report.add("seed", options.seed);
  report.add("max-size", static_cast<size_t>(options.max_size));
  report.add("verdict", result.verdict.frobenius ? "yes" : "no");
  report.add("reason", verdict_reason(result.verdict));
  report.add("generated", static_cast<size_t>(result.n_generated));
  if (result.verdict.frobenius) {
    report.add("canonical-bijective", static_cast<size_t>(result.n_canonical_bijective));
    report.add("transforms-checked", static_cast<size_t>(result.n_transforms_checked));
    report.add("transforms-skipped", static_cast<size_t>(result.n_transforms_skipped));
  } else {
    report.add("samples-lim-neq-colim", static_cast<size_t>(result.n_lim_neq_colim));
    report.add("witness", result.witness_description);
    report.add("witness-lim", result.witness_lim);
    report.add("witness-colim", result.witness_colim);
  }
  report.add("consistent", result.consistent ? "yes" : "no");
  for (const std::string& failure : result.failures) report.add("failure", failure);
  if (!machine)
    std::cout << "oracle set on " << input.describe() << ": verdict " << (result.verdict.frobenius ? "yes" : "no")
              << ", evidence " << (result.consistent ? "consistent" : "INCONSISTENT") << "\n";
  report.print();
  return result.consistent ? 0 : 3;
}

int run_oracle_mod(const InputOptions& input, uint64_t p, const ModOracleOptions& options, bool machine) {
  const FinCategory cat = input.load();
  if (!is_prime(p)) throw std::invalid_argument("--p must be prime");
  const ModOracleReport result = sample_check_mod(cat, static_cast<uint32_t>(p), options);
  Report report;
  report.add("command", "oracle");
  report.add("target", "mod");
  report.add("input", input.describe());
  report.add("p", static_cast<size_t>(p));
  report.add("samples", static_cast<size_t>(options.n_samples));
  report.add("seed", options.seed);
  report.add("max-dim", static_cast<size_t>(options.max_dim));
  report.add("verdict", result.verdict.frobenius ? "yes" : "no");
  report.add("reason", verdict_reason(result.verdict));
  if (result.verdict.frobenius) {
    report.add("generated", static_cast<size_t>(result.n_generated));
    report.add("canonical-invertible", static_cast<size_t>(result.n_canonical_invertible));
    report.add("transforms-checked", static_cast<size_t>(result.n_transforms_checked));
    if (result.n_pullback_checked > 0) {
      report.add("pullback-checked", static_cast<size_t>(result.n_pullback_checked));
      report.add("pullback-invertible", static_cast<size_t>(result.n_pullback_invertible));
      report.add("norm-checked", static_cast<size_t>(result.n_norm_checked));
      report.add("norm-inverts", static_cast<size_t>(result.n_norm_inverts));
    }
  } else {
    if (result.witness_ran) report.add("witness", result.witness_reason);
    if (!result.probe_dims.empty()) {
      std::string dims;
      for (int d : result.probe_dims) dims += (dims.empty() ? "" : " ") + std::to_string(d);
      report.add("probe-dims", dims);
    }
    report.add("inconclusive", static_cast<size_t>(result.n_inconclusive));
  }
  report.add("consistent", result.consistent ? "yes" : "no");
  for (const std::string& failure : result.failures) report.add("failure", failure);
  if (!machine)
    std::cout << "oracle mod (p=" << p << ") on " << input.describe() << ": verdict "
              << (result.verdict.frobenius ? "yes" : "no") << ", evidence "
              << (result.consistent ? "consistent" : "INCONSISTENT") << "\n";
  report.print();
  return result.consistent ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "frobcat: decides whether a finite category has naturally isomorphic limits and colimits\n"
      "relative to Set or to module categories, with machine-checkable certificates.\n"
      "Exit codes: 0 yes/success, 1 no, 2 input error, 3 oracle inconsistency."};
  app.require_subcommand(1);

  InputOptions input;
  bool machine = false;
  std::string ring_text = "z";
  uint64_t prime = 2;
  SetOracleOptions set_options;
  ModOracleOptions mod_options;

  auto* cmd_validate = app.add_subcommand("validate", "check the category laws on an input file");
  add_input_options(cmd_validate, &input);
  cmd_validate->add_flag("--machine", machine, "line-oriented key: value output");

  auto* cmd_analyze =
      app.add_subcommand("analyze", "components, strong connectivity, invariant systems, group data");
  add_input_options(cmd_analyze, &input);
  cmd_analyze->add_flag("--machine", machine, "line-oriented key: value output");

  auto* cmd_decide = app.add_subcommand("decide", "decide the Frobenius property");
  cmd_decide->require_subcommand(1);
  auto* decide_set_cmd = cmd_decide->add_subcommand("set", "relative to the category of sets");
  add_input_options(decide_set_cmd, &input);
  decide_set_cmd->add_flag("--machine", machine);
  auto* decide_mod_cmd = cmd_decide->add_subcommand("mod", "relative to modules over a ring");
  add_input_options(decide_mod_cmd, &input);
  decide_mod_cmd->add_option("--ring", ring_text, "z | q | zmod:<n> | fp:<p>")->required();
  decide_mod_cmd->add_flag("--machine", machine);

  auto* cmd_oracle = app.add_subcommand("oracle", "check a verdict against brute-force evidence");
  cmd_oracle->require_subcommand(1);
  auto* oracle_set_cmd = cmd_oracle->add_subcommand("set", "sampled Set-valued diagrams");
  add_input_options(oracle_set_cmd, &input);
  oracle_set_cmd->add_option("--samples", set_options.n_samples);
  oracle_set_cmd->add_option("--seed", set_options.seed);
  oracle_set_cmd->add_option("--max-size", set_options.max_size);
  oracle_set_cmd->add_flag("--parallel", "evaluate samples with OpenMP");
  oracle_set_cmd->add_flag("--machine", machine);
  auto* oracle_mod_cmd = cmd_oracle->add_subcommand("mod", "sampled F_p-linear diagrams");
  add_input_options(oracle_mod_cmd, &input);
  oracle_mod_cmd->add_option("--p", prime, "prime modulus")->required();
  oracle_mod_cmd->add_option("--samples", mod_options.n_samples);
  oracle_mod_cmd->add_option("--seed", mod_options.seed);
  oracle_mod_cmd->add_option("--max-dim", mod_options.max_dim);
  oracle_mod_cmd->add_flag("--parallel", "evaluate samples with OpenMP");
  oracle_mod_cmd->add_flag("--machine", machine);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_validate->parsed()) return run_validate(input, machine);
    if (cmd_analyze->parsed()) return run_analyze(input, machine);
    if (cmd_decide->parsed()) {
      if (decide_set_cmd->parsed()) return run_decide(input, "set", ring_text, machine);
      return run_decide(input, "mod", ring_text, machine);
    }
    if (cmd_oracle->parsed()) {
      if (oracle_set_cmd->parsed()) {
        if (oracle_set_cmd->count("--parallel") > 0) set_options.mode = Exec::openmp;
        return run_oracle_set(input, set_options, machine);
      }
      if (oracle_mod_cmd->count("--parallel") > 0) mod_options.mode = Exec::openmp;
      return run_oracle_mod(input, prime, mod_options, machine);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
