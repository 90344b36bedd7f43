#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "monolat/algebra/amalgam.hpp"
#include "monolat/algebra/checks.hpp"
#include "monolat/algebra/consequence.hpp"
#include "monolat/algebra/generators.hpp"
#include "monolat/algebra/io.hpp"
#include "monolat/algebra/modal.hpp"
#include "monolat/proof/interpolate.hpp"
#include "monolat/proof/io.hpp"
#include "monolat/proof/search.hpp"
#include "monolat/syntax/equation.hpp"
#include "monolat/syntax/translate.hpp"

namespace monolat::cli {

enum Exit : int { Ok = 0, Refuted = 1, Exhausted = 2, InputError = 3 };

/// Bad command-line input that is not a parse error of CLI11 itself.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

using nlohmann::json;

/// `chains:N`, `lattices:N`, `fle:N`, `flew:N`, `flec:N`.
inline std::vector<FiniteAlgebra> generate(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("generator '" + text + "' needs the form KIND:N");
  const std::string kind = text.substr(0, colon);
  std::size_t n = 0;
  try {
    n = std::stoul(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError("generator '" + text + "': N must be a number");
  }
  if (kind == "chains") return gen::chains(n);
  if (kind == "lattices") {
    if (n > 6) throw UsageError("lattices are generated up to size 6");
    return gen::lattices(n);
  }
  if (kind == "fle" || kind == "flew" || kind == "flec") {
    if (n > 4) throw UsageError("FL_e-algebras are generated up to size 4");
    return gen::fle_algebras(n, kind == "fle" ? FleVariant::Plain : kind == "flew" ? FleVariant::W : FleVariant::C);
  }
  throw UsageError("unknown generator kind '" + kind + "'");
}

/// Files named directly, plus every *.json inside named directories (sorted).
inline std::vector<AlgebraFile> load_files(const std::vector<std::string>& paths) {
  std::vector<AlgebraFile> out;
  for (const auto& p : paths) {
    if (std::filesystem::is_directory(p)) {
      std::vector<std::string> inside;
      for (const auto& entry : std::filesystem::directory_iterator(p))
        if (entry.path().extension() == ".json") inside.push_back(entry.path().string());
      std::sort(inside.begin(), inside.end());
      for (const auto& f : inside) out.push_back(load_algebra(f));
    } else {
      out.push_back(load_algebra(p));
    }
  }
  return out;
}

inline std::string label(const FiniteAlgebra& A, Elem a) { return A.label(a); }

inline std::string tuple_string(const FiniteAlgebra& A, const std::vector<Elem>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + label(A, v[i]);
  return out + ")";
}

inline std::string display_name(const FiniteAlgebra& A, std::size_t index) {
  return A.name().empty() ? "#" + std::to_string(index) : A.name();
}

inline void print_report(std::ostream& out, const std::string& title, const FiniteAlgebra& A, const CheckReport& r,
                         json& j) {
  json entry = {{"ok", r.ok()}, {"violations", json::array()}};
  out << title << ": " << (r.ok() ? "pass" : "FAIL") << '\n';
  for (const auto& v : r.violations) {
    out << "  " << v.law << " fails at " << tuple_string(A, v.witness) << '\n';
    entry["violations"].push_back({{"law", v.law}, {"witness", v.witness}});
  }
  j[title] = entry;
}

inline std::vector<bool> parse_mask(const std::string& list, std::size_t k) {
  std::vector<bool> mask(k, false);
  if (list.empty()) return mask;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t i = 0;
    try {
      i = std::stoul(item);
    } catch (const std::exception&) {
      throw UsageError("--gamma expects comma-separated antecedent indices, got '" + list + "'");
    }
    if (i >= k) throw UsageError("--gamma index " + item + " is out of range for " + std::to_string(k) + " antecedent formulas");
    mask[i] = true;
  }
  return mask;
}

inline int exit_for(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Derivable: return Ok;
    case SearchOutcome::NotDerivable: return Refuted;
    case SearchOutcome::BoundExhausted: return Exhausted;
  }
  return InputError;
}

inline int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Holds: return Ok;
    case Verdict::Refuted: return Refuted;
    case Verdict::BudgetExceeded: return Exhausted;
  }
  return InputError;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

/// Runs one command line (without the program name). Human output goes to
/// `out` unless `--json` is given, in which case `out` receives one JSON
/// document. Diagnostics go to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using detail::json;
  CLI::App app{"monolat: one-variable lattice logics, their modal algebras and sequent calculi"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  unsigned jobs = 1;
  app.add_flag("--json", as_json, "Machine-readable output");
  app.add_option("--jobs", jobs, "Worker threads for battery evaluation")->check(CLI::Range(1u, 256u));

  // translate
  auto* translate = app.add_subcommand("translate", "Translate between one-variable formulas and modal formulas");
  std::string t_formula;
  bool to_modal = false, to_fo = false, ascii = false;
  translate->add_flag("--to-modal", to_modal, "First-order to modal");
  translate->add_flag("--to-fo", to_fo, "Modal to first-order");
  translate->add_flag("--ascii", ascii, "ASCII notation");
  translate->add_option("formula", t_formula, "Formula to translate")->required();

  // prove
  auto* prove_cmd = app.add_subcommand("prove", "Backward proof search");
  std::string p_sequent, p_calc = "fle";
  std::size_t budget = 2, depth = 64;
  bool show_tree = true;
  prove_cmd->add_option("sequent", p_sequent, "Sequent 'G1, G2 |- D'")->required();
  prove_cmd->add_option("--calc", p_calc, "fle, flew or flec")->capture_default_str();
  prove_cmd->add_option("--budget", budget, "Contraction budget per branch (flec)")->capture_default_str();
  prove_cmd->add_option("--depth", depth, "Depth cap")->capture_default_str();

  // interpolate
  auto* interp_cmd = app.add_subcommand("interpolate", "Prove a sequent and split it along a partition");
  std::string i_sequent, i_calc = "fle", gamma_list;
  interp_cmd->add_option("sequent", i_sequent, "Sequent 'G1, G2 |- D'")->required();
  interp_cmd->add_option("--calc", i_calc, "fle, flew or flec")->capture_default_str();
  interp_cmd->add_option("--gamma", gamma_list, "Antecedent indices (as written) on the Gamma side, e.g. 0,2");
  interp_cmd->add_option("--budget", budget, "Contraction budget per branch (flec)")->capture_default_str();

  // check-algebra
  auto* check_cmd = app.add_subcommand("check-algebra", "Check laws of an algebra file");
  std::string c_file;
  bool c_lattice = false, c_fle = false, c_flew = false, c_flec = false, c_m = false;
  std::vector<std::string> c_equations;
  check_cmd->add_option("file", c_file, "Algebra JSON file")->required();
  check_cmd->add_flag("--lattice", c_lattice, "Lattice laws");
  check_cmd->add_flag("--fle", c_fle, "FL_e-algebra laws");
  check_cmd->add_flag("--flew", c_flew, "FL_ew-algebra laws");
  check_cmd->add_flag("--flec", c_flec, "FL_ec-algebra laws");
  check_cmd->add_flag("--m-axioms", c_m, "m-lattice axioms (needs box/diamond tables)");
  check_cmd->add_option("--equation", c_equations, "Modal equation to test, e.g. 'dia p0 * dia p0 = dia (p0*p0)'")->allow_extra_args(false);

  // expansions
  auto* exp_cmd = app.add_subcommand("expansions", "Enumerate all modal expansions of an algebra");
  std::string e_file;
  exp_cmd->add_option("file", e_file, "Algebra JSON file")->required();

  // consequence / countermodel
  std::string mode = "eq", theory_file, goal_text;
  std::vector<std::string> gens, battery_paths;
  std::size_t max_s = 2;
  std::uint64_t max_cases = 20'000'000;
  auto battery_options = [&](CLI::App* sub) {
    sub->add_option("--mode", mode, "eq (modal equations) or fo (first-order)")->check(CLI::IsMember({"eq", "fo"}))->capture_default_str();
    sub->add_option("--gen", gens, "Built-in battery: chains:N, lattices:N, fle:N, flew:N, flec:N")->allow_extra_args(false);
    sub->add_option("--max-s", max_s, "Largest structure domain (fo mode)")->capture_default_str();
    sub->add_option("--max-cases", max_cases, "Evaluation budget")->capture_default_str();
  };
  auto* cons_cmd = app.add_subcommand("consequence", "Bounded consequence over a battery of algebras");
  battery_options(cons_cmd);
  cons_cmd->add_option("--theory", theory_file, "File with one equation per line");
  cons_cmd->add_option("--goal", goal_text, "Goal equation")->required();
  cons_cmd->add_option("battery", battery_paths, "Algebra files or directories");
  auto* cm_cmd = app.add_subcommand("countermodel", "Search a battery for a countermodel to an equation");
  battery_options(cm_cmd);
  cm_cmd->add_option("goal", goal_text, "Equation to refute")->required();
  cm_cmd->add_option("battery", battery_paths, "Algebra files or directories");

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "Search a functional embedding of an m-lattice");
  std::string m_file;
  std::size_t max_w = 3;
  std::uint64_t embed_budget = 50'000'000;
  embed_cmd->add_option("file", m_file, "Algebra JSON file with box/diamond")->required();
  embed_cmd->add_option("--gen", gens, "Candidate bases (default lattices:4)")->allow_extra_args(false);
  embed_cmd->add_option("--max-w", max_w, "Largest number of worlds")->capture_default_str();
  embed_cmd->add_option("--budget", embed_budget, "Search node budget")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return InputError;
  }

  const Notation notation = ascii ? Notation::Ascii : Notation::Unicode;
  json j;
  int code = Ok;
  std::ostringstream text;

  try {
    if (*translate) {
      if (to_modal == to_fo) throw UsageError("translate needs exactly one of --to-modal and --to-fo");
      std::string result = to_modal ? to_string(star(parse_fo(t_formula)), notation) : to_string(circle(parse_modal(t_formula)), notation);
      text << result << '\n';
      j = {{"input", t_formula}, {"direction", to_modal ? "to-modal" : "to-fo"}, {"output", result}};
    } else if (*prove_cmd) {
      SearchConfig cfg;
      cfg.calculus = parse_calculus(p_calc);
      cfg.contraction_budget = budget;
      cfg.depth_cap = depth;
      Sequent s = parse_sequent(p_sequent);
      SearchResult r = prove(s, cfg);
      text << to_string(r.outcome) << " in " << to_string(cfg.calculus) << " (" << r.explored << " search nodes)\n";
      if (r.derivation && show_tree) text << "md = " << md(*r.derivation) << '\n' << to_text(*r.derivation);
      j = {{"sequent", to_string(s, Notation::Ascii)}, {"calculus", to_string(cfg.calculus)},
           {"outcome", to_string(r.outcome)}, {"explored", r.explored}};
      if (r.derivation) {
        j["md"] = md(*r.derivation);
        j["derivation"] = to_json(*r.derivation);
      }
      code = detail::exit_for(r.outcome);
    } else if (*interp_cmd) {
      SearchConfig cfg;
      cfg.calculus = parse_calculus(i_calc);
      cfg.contraction_budget = budget;
      // Indices refer to the antecedent as written, before sorting.
      std::string_view sv = i_sequent;
      Sequent s = parse_sequent(sv);
      FormulaParser<FoFormula> reparse(sv);
      Multiset written;
      if (reparse.peek().kind != Tok::Turnstile) {
        written.push_back(reparse.parse_formula());
        while (reparse.accept(Tok::Comma)) written.push_back(reparse.parse_formula());
      }
      std::vector<bool> mask = detail::parse_mask(gamma_list, written.size());
      Multiset gamma, pi;
      for (std::size_t i = 0; i < written.size(); ++i) (mask[i] ? gamma : pi).push_back(written[i]);
      SearchResult r = prove(s, cfg);
      j = {{"sequent", to_string(s, Notation::Ascii)}, {"calculus", to_string(cfg.calculus)}, {"outcome", to_string(r.outcome)}};
      if (!r.derivation) {
        text << to_string(r.outcome) << ": nothing to interpolate\n";
        code = detail::exit_for(r.outcome);
      } else {
        InterpolationResult ir = interpolate(*r.derivation, gamma, pi, cfg.calculus);
        text << "chi = " << to_string(ir.chi) << '\n'
             << "md(d) = " << ir.md_d << ", md(d1) = " << ir.md_d1 << ", md(d2) = " << ir.md_d2 << '\n'
             << "d1:\n" << to_text(ir.d1) << "d2:\n" << to_text(ir.d2);
        j["chi"] = to_string(ir.chi, Notation::Ascii);
        j["md"] = {{"d", ir.md_d}, {"d1", ir.md_d1}, {"d2", ir.md_d2}};
        j["d1"] = to_json(ir.d1);
        j["d2"] = to_json(ir.d2);
      }
    } else if (*check_cmd) {
      AlgebraFile file = load_algebra(c_file);
      const FiniteAlgebra& A = file.algebra;
      const bool any = c_lattice || c_fle || c_flew || c_flec || c_m || !c_equations.empty();
      bool failed = false;
      j = {{"algebra", A.name()}, {"size", A.size()}};
      text << "algebra " << (A.name().empty() ? c_file : A.name()) << " of size " << A.size() << '\n';
      if (c_lattice || !any) {
        auto r = check_lattice(A);
        detail::print_report(text, "lattice", A, r, j);
        failed = failed || !r.ok();
      }
      const std::pair<bool, FleVariant> variants[] = {{c_fle || (!any && A.has_fle_signature()), FleVariant::Plain},
                                                      {c_flew, FleVariant::W}, {c_flec, FleVariant::C}};
      for (const auto& [wanted, variant] : variants) {
        if (!wanted) continue;
        if (!A.has_fle_signature()) throw UsageError("FL_e checks need operations mul, imp and constants f, e");
        auto r = check_fle(A, variant);
        detail::print_report(text, std::string("FL_e(") + to_string(variant) + ")", A, r, j);
        failed = failed || !r.ok();
      }
      if (c_m || (!any && file.modal)) {
        if (!file.modal) throw UsageError("--m-axioms needs box and diamond tables in the algebra file");
        auto r = check_m_axioms(*file.modal);
        text << "m-axioms: " << (r.ok() ? "pass" : "FAIL") << '\n';
        json axioms = json::array();
        for (const auto& a : r.axioms) {
          if (!a.passed) text << "  " << a.name << " fails at " << detail::tuple_string(A, a.witness) << '\n';
          axioms.push_back({{"name", a.name}, {"passed", a.passed}, {"derived", a.derived}, {"witness", a.witness}});
        }
        j["m-axioms"] = {{"ok", r.ok()}, {"axioms", axioms}};
        failed = failed || !r.ok();
      }
      json eqs = json::array();
      for (const auto& eq_text : c_equations) {
        ModalEquation eq = parse_equation<ModalFormula>(eq_text);
        ModalExpansion M = file.modal ? *file.modal : identity_modalities(A);
        auto v = equational_consequence({M}, {}, eq, ConsequenceOptions{max_cases, jobs});
        json e = {{"equation", to_string(eq, Notation::Ascii)}, {"verdict", to_string(v.verdict)}};
        text << "equation " << to_string(eq) << ": " << to_string(v.verdict) << '\n';
        if (v.countermodel) {
          const auto& cm = *v.countermodel;
          std::string assignment;
          json values = json::object();
          for (auto var : prop_vars({}, eq)) {
            Elem a = cm.assignment(var);
            assignment += (assignment.empty() ? "" : ", ") + ("p" + std::to_string(var)) + " = " + A.label(a);
            values["p" + std::to_string(var)] = A.label(a);
          }
          text << "  countermodel: " << assignment << " (lhs " << A.label(cm.lhs) << ", rhs " << A.label(cm.rhs) << ")\n";
          e["countermodel"] = {{"assignment", values}, {"lhs", A.label(cm.lhs)}, {"rhs", A.label(cm.rhs)}};
        }
        eqs.push_back(e);
        if (v.verdict == Verdict::BudgetExceeded && code == Ok) code = Exhausted;
        failed = failed || v.verdict == Verdict::Refuted;
      }
      if (!c_equations.empty()) j["equations"] = eqs;
      if (failed) code = Refuted;
      j["ok"] = !failed;
    } else if (*exp_cmd) {
      AlgebraFile file = load_algebra(e_file);
      auto all = enumerate_modal_expansions(file.algebra);
      text << all.size() << " modal expansion(s)\n";
      json list = json::array();
      for (const auto& M : all) {
        auto img = box_image(M);
        text << "  box " << detail::tuple_string(M.base(), M.box_table()) << "  diamond "
             << detail::tuple_string(M.base(), M.diamond_table()) << "  image {";
        for (std::size_t i = 0; i < img.size(); ++i) text << (i ? ", " : "") << M.base().label(img[i]);
        text << "}\n";
        list.push_back({{"box", M.box_table()}, {"diamond", M.diamond_table()}, {"image", img}});
      }
      j = {{"count", all.size()}, {"expansions", list}};
    } else if (*cons_cmd || *cm_cmd) {
      std::vector<FiniteAlgebra> bases;
      std::vector<std::optional<ModalExpansion>> modal;
      for (const auto& g : gens)
        for (auto& A : detail::generate(g)) bases.push_back(std::move(A)), modal.emplace_back();
      for (auto& f : detail::load_files(battery_paths)) bases.push_back(f.algebra), modal.push_back(f.modal);
      if (bases.empty()) throw UsageError("empty battery: give algebra files or --gen");
      ConsequenceOptions opts{max_cases, jobs};
      j = {{"mode", mode}, {"algebras", bases.size()}};
      Verdict verdict = Verdict::Holds;
      if (mode == "eq") {
        // Files with modal tables contribute that expansion, other algebras all of theirs.
        std::vector<ModalExpansion> battery;
        for (std::size_t i = 0; i < bases.size(); ++i) {
          if (modal[i]) battery.push_back(*modal[i]);
          else
            for (auto& M : enumerate_modal_expansions(bases[i])) battery.push_back(std::move(M));
        }
        Theory<ModalFormula> sigma = theory_file.empty() ? Theory<ModalFormula>{} : parse_theory<ModalFormula>(detail::read_file(theory_file));
        ModalEquation goal = parse_equation<ModalFormula>(goal_text);
        auto v = equational_consequence(battery, sigma, goal, opts);
        verdict = v.verdict;
        text << to_string(v.verdict) << " over " << battery.size() << " modal algebra(s), " << v.cases << " case(s)\n";
        j["expansions"] = battery.size();
        j["cases"] = v.cases;
        if (v.countermodel) {
          const auto& cm = *v.countermodel;
          const ModalExpansion& M = battery[cm.algebra];
          const FiniteAlgebra& A = M.base();
          json values = json::object();
          text << "countermodel in " << detail::display_name(A, cm.algebra) << " (box "
               << detail::tuple_string(A, M.box_table()) << ", diamond " << detail::tuple_string(A, M.diamond_table()) << "):";
          const char* sep = " ";
          for (auto var : prop_vars(sigma, goal)) {
            text << sep << 'p' << var << " = " << A.label(cm.assignment(var));
            sep = ", ";
            values["p" + std::to_string(var)] = A.label(cm.assignment(var));
          }
          text << "; lhs " << A.label(cm.lhs) << ", rhs " << A.label(cm.rhs) << '\n';
          j["countermodel"] = {{"algebra", to_json(M)}, {"assignment", values}, {"lhs", A.label(cm.lhs)}, {"rhs", A.label(cm.rhs)}};
        }
      } else {
        Theory<FoFormula> theory = theory_file.empty() ? Theory<FoFormula>{} : parse_theory<FoFormula>(detail::read_file(theory_file));
        FoEquation goal = parse_equation<FoFormula>(goal_text);
        auto v = fo_consequence(bases, max_s, theory, goal, opts);
        verdict = v.verdict;
        text << to_string(v.verdict) << " over " << bases.size() << " algebra(s) with |S| <= " << max_s << ", " << v.cases
             << " case(s)\n";
        j["cases"] = v.cases;
        if (v.countermodel) {
          const auto& cm = *v.countermodel;
          const FiniteAlgebra& A = bases[cm.algebra];
          json interp = json::object();
          text << "countermodel in " << detail::display_name(A, cm.algebra) << " with |S| = " << cm.structure.domain_size
               << " at world " << cm.world << ':';
          const char* sep = " ";
          for (const auto& [pred, values] : cm.structure.interpretation) {
            text << sep << 'P' << pred << " = " << detail::tuple_string(A, values);
            sep = ", ";
            std::vector<std::string> labels;
            for (Elem a : values) labels.push_back(A.label(a));
            interp["P" + std::to_string(pred)] = labels;
          }
          text << "; lhs " << A.label(cm.lhs) << ", rhs " << A.label(cm.rhs) << '\n';
          j["countermodel"] = {{"algebra", to_json(A)}, {"domain", cm.structure.domain_size}, {"world", cm.world},
                               {"interpretation", interp}, {"lhs", A.label(cm.lhs)}, {"rhs", A.label(cm.rhs)}};
        }
      }
      j["verdict"] = to_string(verdict);
      code = detail::exit_for(verdict);
    } else if (*embed_cmd) {
      AlgebraFile file = load_algebra(m_file);
      if (!file.modal) throw UsageError("embed needs box and diamond tables in the algebra file");
      std::vector<FiniteAlgebra> bases;
      if (gens.empty()) gens.push_back("lattices:4");
      for (const auto& g : gens)
        for (auto& A : detail::generate(g)) bases.push_back(std::move(A));
      EmbeddingResult r = search_functional_embedding(*file.modal, bases, max_w, embed_budget);
      text << to_string(r.status) << " (" << r.nodes << " search nodes)\n";
      j = {{"status", to_string(r.status)}, {"nodes", r.nodes}};
      if (r.status == SearchStatus::Found) {
        const FiniteAlgebra& B = bases[r.base];
        FullFunctional F = full_functional(B, r.worlds);
        text << "into " << detail::display_name(B, r.base) << "^" << r.worlds << ":\n";
        json map = json::array();
        for (std::size_t a = 0; a < r.map.size(); ++a) {
          auto fn = F.decode(r.map[a]);
          text << "  " << file.algebra.label(static_cast<Elem>(a)) << " -> " << detail::tuple_string(B, fn) << '\n';
          map.push_back(fn);
        }
        j["base"] = to_json(B);
        j["worlds"] = r.worlds;
        j["map"] = map;
      }
      code = r.status == SearchStatus::Found ? Ok : r.status == SearchStatus::NotFound ? Refuted : Exhausted;
    }
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << '\n';
    return InputError;
  } catch (const AlgebraError& e) {
    err << "algebra error: " << e.what() << '\n';
    return InputError;
  } catch (const ProofError& e) {
    err << "proof error: " << e.what() << '\n';
    return InputError;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return InputError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return InputError;
  }

  if (as_json) {
    j["exit"] = code;
    out << j.dump(2) << '\n';
  } else {
    out << text.str();
  }
  return code;
}

}  // namespace monolat::cli
