// Command-line front end for the exact unary inductive-logic library.
//
// Exit codes: 0 success / all checks pass, 1 a checked principle is
// violated, 2 usage or parse error, 3 resource guard exceeded.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "pilex/decompose.hpp"
#include "pilex/json_io.hpp"
#include "pilex/principles.hpp"

namespace {

using namespace pilex;

constexpr std::uint64_t kDefaultSeed = 20240811;

struct Options {
  bool json = false;
  Guards guards;
};

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open parameter file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
  return j;
}

void emit(const Options& opt, const Json& machine, const std::string& human) {
  if (opt.json) {
    std::cout << machine.dump(2) << "\n";
  } else {
    std::cout << human;
  }
}

int cmd_atoms(const Options& opt, int q) {
  const auto all = atoms(q, opt.guards);
  Json items = Json::array();
  std::string text;
  for (const auto& atom : all) {
    items.push_back(Json{{"index", atom.index()},
                         {"signs", atom.to_string()},
                         {"gamma", atom.negation_count()}});
    text += "a" + std::to_string(atom.index()) + " " + atom.to_string() +
            " gamma=" + std::to_string(atom.negation_count()) + "\n";
  }
  emit(opt, Json{{"kind", "table"}, {"atoms", std::move(items)}}, text);
  return 0;
}

int cmd_pspec(const Options& opt, const std::string& sd_text) {
  const StateDescription sd = parse_sd(sd_text, opt.guards);
  const PSpectrum spectrum = pspectrum(sd);
  emit(opt,
       Json{{"kind", "value"}, {"sd", format_sd(sd)}, {"pspectrum", to_json(spectrum)}},
       spectrum.to_string() + "\n");
  return 0;
}

int cmd_perms(const Options& opt, int q, bool spectrum_preserving) {
  std::vector<AtomPermutation> perms;
  if (spectrum_preserving) {
    perms = spec_perm_group(q, opt.guards);
  } else {
    for (const auto& p : all_pred_perms(q)) perms.push_back(induced_atom_perm(p));
    std::sort(perms.begin(), perms.end());
  }
  Json items = Json::array();
  std::string text;
  for (const auto& perm : perms) {
    items.push_back(perm.image);
    text += perm.to_string() + "\n";
  }
  emit(opt, Json{{"kind", "table"}, {"perms", std::move(items)}}, text);
  return 0;
}

int cmd_eval(const Options& opt, const std::string& kind, const std::string& params_path,
             const std::string& sd_text, const std::string& qf_text) {
  const ProbFn fn = prob_fn_from_params(kind, load_json_file(params_path));
  Rat value;
  Json query;
  if (!sd_text.empty()) {
    const StateDescription sd = parse_sd(sd_text, opt.guards);
    value = eval_sd(fn, sd, opt.guards);
    query = Json{{"sd", format_sd(sd)}};
  } else {
    const QFSentence s = parse_qf(qf_text);
    value = eval_qf(fn, s, opt.guards);
    query = Json{{"qf", s.to_string()}};
  }
  query["kind"] = "value";
  query["value"] = rat_to_json(value);
  emit(opt, query, format_rat(value) + "\n");
  return 0;
}

int report_exit(const std::vector<PrincipleReport>& reports) {
  for (const auto& r : reports) {
    if (!r.pass) return 1;
  }
  return 0;
}

std::string report_text(const PrincipleReport& report) {
  std::string line = principle_name(report.principle) + ": " +
                     (report.pass ? "pass" : "fail");
  if (report.witness) {
    const Witness& w = *report.witness;
    if (w.theta) line += "\n  theta: " + format_sd(*w.theta);
    if (w.phi) line += "\n  phi:   " + format_sd(*w.phi);
    if (w.theta_sentence) line += "\n  theta: " + *w.theta_sentence;
    if (w.phi_sentence) line += "\n  phi:   " + *w.phi_sentence;
    if (w.permutation) line += "\n  perm:  " + format_perm(*w.permutation);
    if (w.lhs) line += "\n  lhs:   " + format_rat(*w.lhs);
    if (w.rhs) line += "\n  rhs:   " + format_rat(*w.rhs);
    if (!w.note.empty()) line += "\n  note:  " + w.note;
  }
  return line + "\n";
}

int cmd_check(const Options& opt, const std::string& principle, const std::string& kind,
              const std::string& params_path, int q, int n, int q_large) {
  const ProbFn fn = prob_fn_from_params(kind, load_json_file(params_path));
  PrincipleReport report;
  if (principle == "axioms") {
    report = check_axioms(fn, q, n, opt.guards);
  } else if (principle == "ex") {
    report = check_invariance(fn, Principle::Ex, q, n, opt.guards);
  } else if (principle == "px") {
    report = check_invariance(fn, Principle::Px, q, n, opt.guards);
  } else if (principle == "ax") {
    report = check_invariance(fn, Principle::Ax, q, n, opt.guards);
  } else if (principle == "spx") {
    report = check_invariance(fn, Principle::SPx, q, n, opt.guards);
  } else if (principle == "wip") {
    report = check_wip(fn, q, WipBounds{}, opt.guards);
  } else if (principle == "uli") {
    report = check_uli_consistency(fn, q, q_large > 0 ? q_large : q + 1, n, opt.guards);
  } else {
    throw CLI::ValidationError("--principle",
                               "expected axioms|ex|px|ax|spx|wip|uli, got '" + principle + "'");
  }
  emit(opt, to_json(report), report_text(report));
  return report.pass ? 0 : 1;
}

int cmd_classify(const Options& opt, const std::string& kind, const std::string& params_path,
                 int q, int n) {
  const ProbFn fn = prob_fn_from_params(kind, load_json_file(params_path));
  const auto reports = classify(fn, q, n, opt.guards);
  Json items = Json::array();
  std::string text;
  for (const auto& r : reports) {
    items.push_back(to_json(r));
    text += report_text(r);
  }
  emit(opt, Json{{"kind", "report"}, {"reports", std::move(items)}}, text);
  return report_exit(reports);
}

int cmd_example(const Options& opt, const std::string& name) {
  if (name != "px-not-spx") {
    throw CLI::ValidationError("example", "unknown example '" + name + "'");
  }
  const PxNotSpxExample ex = run_px_not_spx_example(opt.guards);
  Json machine{
      {"kind", "report"},
      {"theta", format_sd(ex.theta)},
      {"phi", format_sd(ex.phi)},
      {"pspectrum_theta", to_json(ex.spectrum_theta)},
      {"pspectrum_phi", to_json(ex.spectrum_phi)},
      {"spectra_equal", ex.spectrum_theta == ex.spectrum_phi},
      {"w_theta", rat_to_json(ex.w_theta)},
      {"w_phi", rat_to_json(ex.w_phi)},
      {"printed_w_theta", rat_to_json(ex.printed_theta)},
      {"printed_w_phi", rat_to_json(ex.printed_phi)},
      {"printed_totals_match", ex.w_theta == ex.printed_theta && ex.w_phi == ex.printed_phi},
      {"px", to_json(ex.px_report)},
      {"spx", to_json(ex.spx_report)},
  };
  // Render values as numerators over the shared denominator 6*19^5.
  auto over_common = [](const Rat& value) {
    Rat numerator = value * 6 * 2476099;
    return format_rat(numerator) + "/(6*19^5)";
  };
  std::string text;
  text += "Theta = " + format_sd(ex.theta) + "  (" + format_sd_indices(ex.theta) + ")\n";
  text += "Phi   = " + format_sd(ex.phi) + "  (" + format_sd_indices(ex.phi) + ")\n";
  text += "P-spectrum(Theta) = " + ex.spectrum_theta.to_string() + "\n";
  text += "P-spectrum(Phi)   = " + ex.spectrum_phi.to_string() +
          (ex.spectrum_theta == ex.spectrum_phi ? "  (equal)\n" : "  (DIFFERENT)\n");
  text += "w(Theta) = " + format_rat(ex.w_theta) + " = " + over_common(ex.w_theta) + "\n";
  text += "w(Phi)   = " + format_rat(ex.w_phi) + " = " + over_common(ex.w_phi) + "\n";
  text += "printed totals: " + over_common(ex.printed_theta) + ", " +
          over_common(ex.printed_phi) +
          (ex.w_theta == ex.printed_theta && ex.w_phi == ex.printed_phi
               ? "  (match)\n"
               : "  (disagree with the permutation expansion; the expansion is authoritative)\n");
  text += "Px (q=3, n<=5): " + std::string(ex.px_report.pass ? "pass" : "fail") + "\n";
  text += ex.spx_report.pass
              ? "SPx verdict: not refuted by this pair\n"
              : "SPx violated: w(Theta) != w(Phi) on equal P-spectra\n";
  emit(opt, machine, text);
  return 0;  // the violation is the expected outcome here
}

int cmd_decompose(const Options& opt, int q, const std::string& x_list, std::uint64_t seed,
                  int verify_len, const std::string& cert_path) {
  const std::vector<Rat> components = parse_rat_list(x_list);
  if (static_cast<int>(components.size()) != (1 << q)) {
    throw BoundsError("--x needs exactly 2^q components");
  }
  const SimplexVector x(q, components);
  const DecompositionResult result = decompose_z(x, seed, verify_len, opt.guards);
  if (!cert_path.empty()) {
    std::ofstream out(cert_path);
    if (!out) throw ParseError("cannot write certificate file '" + cert_path + "'");
    out << certificate_to_json(result).dump(2) << "\n";
  }
  std::string text;
  text += "lambda = " + format_rat(result.lambda) + "\n";
  text += "det    = " + format_rat(result.taus.det) + "\n";
  text += "tau table: " + std::to_string(result.taus.rows.size()) + " rows (attempt " +
          std::to_string(result.taus.attempts) + ")\n";
  text += "w1 components: " + std::to_string(result.w1.components().size()) +
          ", w2 components: " + std::to_string(result.w2.components().size()) + "\n";
  text += "identity verified exactly on all descriptions up to length " +
          std::to_string(result.verified_length) + " (" +
          std::to_string(result.certificate.size()) + " values)\n";
  emit(opt, to_json(result), text);
  return 0;
}

int cmd_ratio(const Options& opt, int Q, const std::string& upsilon_text,
              const std::string& theta_text) {
  const StateDescription upsilon = parse_sd(upsilon_text, opt.guards);
  const StateDescription theta = parse_sd(theta_text, opt.guards);
  const Rat ratio = spectrum_class_ratio(Q, upsilon, theta, opt.guards);
  emit(opt,
       Json{{"kind", "value"},
            {"upsilon", format_sd(upsilon)},
            {"theta", format_sd(theta)},
            {"ratio", rat_to_json(ratio)}},
       format_rat(ratio) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic toolkit for unary inductive logic"};
  app.require_subcommand(1);

  Options opt;
  app.add_flag("--json", opt.json, "machine-readable JSON output");
  app.add_option("--max-enum", opt.guards.max_enum,
                 "state-description enumeration budget (default 2^24)");
  app.add_flag("--allow-q3", opt.guards.allow_q3_classes,
               "allow orbit-class enumeration at q=3");

  auto* atoms_cmd = app.add_subcommand("atoms", "list the atoms of L_q");
  int atoms_q = 1;
  atoms_cmd->add_option("--q", atoms_q, "predicate count")->required();

  auto* pspec_cmd = app.add_subcommand("pspec", "P-spectrum of a state description");
  std::string pspec_sd;
  pspec_cmd->add_option("--sd", pspec_sd, "state description, e.g. \"q=3: ++- -++\"")
      ->required();

  auto* perms_cmd = app.add_subcommand("perms", "atom permutations of L_q");
  int perms_q = 1;
  bool perms_spectrum = false;
  perms_cmd->add_option("--q", perms_q, "predicate count")->required();
  perms_cmd->add_flag("--spectrum-preserving", perms_spectrum,
                      "the spectrum-preserving group instead of the predicate-induced one");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a probability function");
  std::string eval_fn = "wx", eval_params, eval_sd_text, eval_qf_text;
  eval_cmd->add_option("--fn", eval_fn, "wx|vpt|vptn|zx|mixture")->required();
  eval_cmd->add_option("--params", eval_params, "JSON parameter file")->required();
  auto* eval_sd_opt = eval_cmd->add_option("--sd", eval_sd_text, "state description");
  eval_cmd->add_option("--qf", eval_qf_text, "quantifier-free sentence")
      ->excludes(eval_sd_opt);

  auto* check_cmd = app.add_subcommand("check", "check one principle");
  std::string check_principle, check_fn = "wx", check_params;
  int check_q = 2, check_n = 3, check_q_large = 0;
  check_cmd->add_option("--principle", check_principle, "axioms|ex|px|ax|spx|wip|uli")
      ->required();
  check_cmd->add_option("--fn", check_fn, "wx|vpt|vptn|zx|mixture")->required();
  check_cmd->add_option("--params", check_params, "JSON parameter file")->required();
  check_cmd->add_option("--q", check_q, "language size");
  check_cmd->add_option("--n", check_n, "constant bound");
  check_cmd->add_option("--q-large", check_q_large, "larger language for uli (default q+1)");

  auto* classify_cmd = app.add_subcommand("classify", "run every applicable checker");
  std::string classify_fn = "wx", classify_params;
  int classify_q = 2, classify_n = 3;
  classify_cmd->add_option("--fn", classify_fn, "wx|vpt|vptn|zx|mixture")->required();
  classify_cmd->add_option("--params", classify_params, "JSON parameter file")->required();
  classify_cmd->add_option("--q", classify_q, "language size");
  classify_cmd->add_option("--n", classify_n, "constant bound");

  auto* example_cmd = app.add_subcommand("example", "reproduce a worked construction");
  std::string example_name;
  example_cmd->add_option("name", example_name, "px-not-spx")->required();

  auto* decompose_cmd =
      app.add_subcommand("decompose", "write the SPx closure of w_x as (1+l)w1 - l w2");
  int decompose_q = 2, decompose_verify = 3;
  std::string decompose_x, decompose_cert;
  std::uint64_t decompose_seed = kDefaultSeed;
  decompose_cmd->add_option("--q", decompose_q, "language size (guarded to q <= 2)")
      ->required();
  decompose_cmd->add_option("--x", decompose_x, "2^q rationals, e.g. \"1/2,1/4,1/8,1/8\"")
      ->required();
  decompose_cmd->add_option("--seed", decompose_seed,
                            "seed for the regularity search (default 20240811)");
  decompose_cmd->add_option("--verify-len", decompose_verify,
                            "verify the identity on all descriptions up to this length");
  decompose_cmd->add_option("--cert", decompose_cert, "write the verification certificate");

  auto* ratio_cmd = app.add_subcommand("ratio", "orbit-counting extension ratio");
  int ratio_Q = 1;
  std::string ratio_upsilon, ratio_theta;
  ratio_cmd->add_option("--Q", ratio_Q, "language size")->required();
  ratio_cmd->add_option("--upsilon", ratio_upsilon, "long state description")->required();
  ratio_cmd->add_option("--theta", ratio_theta, "prefix state description")->required();

  try {
    app.parse(argc, argv);
    if (*atoms_cmd) return cmd_atoms(opt, atoms_q);
    if (*pspec_cmd) return cmd_pspec(opt, pspec_sd);
    if (*perms_cmd) return cmd_perms(opt, perms_q, perms_spectrum);
    if (*eval_cmd) {
      if (eval_sd_text.empty() && eval_qf_text.empty()) {
        throw CLI::RequiredError("--sd or --qf");
      }
      return cmd_eval(opt, eval_fn, eval_params, eval_sd_text, eval_qf_text);
    }
    if (*check_cmd) {
      return cmd_check(opt, check_principle, check_fn, check_params, check_q, check_n,
                       check_q_large);
    }
    if (*classify_cmd) return cmd_classify(opt, classify_fn, classify_params, classify_q, classify_n);
    if (*example_cmd) return cmd_example(opt, example_name);
    if (*decompose_cmd) {
      return cmd_decompose(opt, decompose_q, decompose_x, decompose_seed, decompose_verify,
                           decompose_cert);
    }
    if (*ratio_cmd) return cmd_ratio(opt, ratio_Q, ratio_upsilon, ratio_theta);
    throw CLI::RequiredError("subcommand");
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const GuardError& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
