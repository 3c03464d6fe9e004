// raag: algorithms on grammar-compressed words over partially commutative
// alphabets. Subcommands cover the compressed word problem (wp), normal
// forms (nf), cores (core), compressed trace pattern matching (match),
// conjugacy (conj), the restricted simultaneous conjugacy problem (rsccp)
// and the word problem for outer automorphism groups (out).
//
// Exit codes: 0 = yes/solved, 1 = no, 2 = input error, 3 = resource guard.

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "raag/conjugacy.hpp"
#include "raag/ctrace.hpp"
#include "raag/errors.hpp"
#include "raag/session.hpp"
#include "raag/slp.hpp"
#include "raag/tracematch.hpp"

namespace {

using nlohmann::json;
using namespace raag;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

struct Options {
  std::string input;
  std::string backend = "reference";
  uint64_t guard = kDefaultGuard;
  std::string format = "text";

  WordBackend make_backend() const {
    WordBackend b;
    b.mode = backend == "compressed" ? WordBackend::Mode::compressed
                                     : WordBackend::Mode::reference;
    b.decompress_guard = guard;
    return b;
  }
  bool structured() const { return format == "structured"; }
};

json slp_to_json(const Slp& s, const std::string& name) {
  json j;
  j["name"] = name;
  j["length"] = s.length();
  j["slp"] = format_slp(s, name);
  if (s.length() <= 128)
    j["word"] = format_word(s.alphabet(), s.decompress(uint64_t{128}));
  return j;
}

void print_slp_result(const Options& opt, const std::string& command,
                      const Slp& s, const std::string& name) {
  if (opt.structured()) {
    json j;
    j["command"] = command;
    j["answer"] = "yes";
    j["result"] = slp_to_json(s, name);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << format_slp(s, name) << '\n';
    if (s.length() <= 128)
      std::cout << "# word: " << format_word(s.alphabet(), s.decompress(uint64_t{128}))
                << '\n';
  }
}

void print_answer(const Options& opt, const std::string& command, bool yes,
                  json witness = {}) {
  if (opt.structured()) {
    json j;
    j["command"] = command;
    j["answer"] = yes ? "yes" : "no";
    if (!witness.is_null()) j["witness"] = witness;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << (yes ? "YES" : "NO") << '\n';
  }
}

json point_json(const IndependenceAlphabet& alpha, const ParikhPoint& p) {
  json j = json::object();
  for (size_t i = 0; i < p.support.size(); ++i)
    j[alpha.name(p.support[i])] = p.counts[i];
  return j;
}

std::string progression_text(const IndependenceAlphabet& alpha,
                             const ArithProgression& ap) {
  return ap.to_string(alpha);
}

int run_match(const Options& opt, const std::string& pattern,
              const std::string& text) {
  Session session = parse_session_file(opt.input);
  WordBackend backend = opt.make_backend();
  CompressedTrace p = ct(session.object(pattern));
  CompressedTrace t = ct(session.object(text));
  MatchResult result = match_with_witness(p, t, backend);
  json witness;
  if (result.is_factor && !result.witnesses.empty()) {
    witness = json::array();
    for (const MatchWitness& w : result.witnesses) {
      json jw;
      jw["nonterminal"] = w.nonterminal_name;
      jw["letters"] = json::array();
      for (Letter a : w.component)
        jw["letters"].push_back(session.signed_alphabet.name(a));
      jw["progressions"] = json::array();
      for (const ArithProgression& ap : w.progressions) {
        json jp;
        jp["init"] = point_json(session.signed_alphabet, ap.init);
        jp["delta"] = point_json(session.signed_alphabet, ap.delta);
        jp["steps"] = ap.steps;
        jp["display"] = progression_text(session.signed_alphabet, ap);
        jw["progressions"].push_back(jp);
      }
      witness.push_back(jw);
    }
  }
  print_answer(opt, "match", result.is_factor, witness);
  if (!opt.structured() && result.is_factor) {
    for (const MatchWitness& w : result.witnesses) {
      std::cout << "# at " << w.nonterminal_name << ":";
      for (const ArithProgression& ap : w.progressions)
        std::cout << ' ' << progression_text(session.signed_alphabet, ap);
      std::cout << '\n';
    }
  }
  return result.is_factor ? kExitYes : kExitNo;
}

int run_rsccp(const Options& opt, const std::string& map_spec) {
  Session session = parse_session_file(opt.input);
  WordBackend backend = opt.make_backend();
  const IndependenceAlphabet& alpha = session.signed_alphabet;

  // --map a=Aa,b=Ab,...; unmapped letters default to the identity instance.
  std::vector<Slp> programs;
  for (int i = 0; i < alpha.base_size(); ++i)
    programs.push_back(Slp::letter(alpha, Letter(static_cast<uint32_t>(2 * i))));
  std::istringstream in(map_spec);
  std::string entry;
  while (std::getline(in, entry, ',')) {
    if (entry.empty()) continue;
    auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw ValidationError("rsccp: --map entries look like letter=NAME");
    std::string letter = entry.substr(0, eq);
    std::string object = entry.substr(eq + 1);
    auto base_letter = session.base.find(letter);
    if (!base_letter)
      throw ValidationError("rsccp: unknown letter '" + letter + "' in --map");
    programs[base_letter->id()] = session.object(object);
  }

  auto solution = rsccp_solve(programs, backend);
  if (opt.structured()) {
    json j;
    j["command"] = "rsccp";
    j["answer"] = solution ? "yes" : "no";
    if (solution) j["witness"] = slp_to_json(*solution, "s");
    std::cout << j.dump(2) << '\n';
  } else if (solution) {
    std::cout << "YES\n";
    std::cout << format_slp(*solution, "s") << '\n';
  } else {
    std::cout << "NO\n";
  }
  return solution ? kExitYes : kExitNo;
}

int run_out(const Options& opt, const std::string& table,
            const std::string& word_spec) {
  Session session = parse_session_file(opt.input);
  WordBackend backend = opt.make_backend();

  std::vector<std::string> word;
  {
    std::istringstream in(word_spec);
    std::string name;
    while (in >> name) word.push_back(name);
  }
  if (!table.empty()) {
    auto it = session.tables.find(table);
    if (it == session.tables.end())
      throw ValidationError("out: no table named '" + table + "'");
    for (const auto& name : word) {
      if (std::find(it->second.begin(), it->second.end(), name) ==
          it->second.end())
        throw ValidationError("out: generator '" + name + "' is not in table '" +
                              table + "'");
    }
  }
  bool inner = out_word_problem(*session.generators, word, backend);
  print_answer(opt, "out", inner);
  return inner ? kExitYes : kExitNo;
}

int dispatch(const std::string& command, const Options& opt,
             const std::string& target, const std::string& pattern,
             const std::string& text, const std::string& left,
             const std::string& right, const std::string& map_spec,
             const std::string& table, const std::string& word_spec) {
  const WordBackend backend = opt.make_backend();
  if (command == "nf") {
    Session session = parse_session_file(opt.input);
    CompressedTrace r = r_reduce(ct(session.object(target)), backend);
    print_slp_result(opt, "nf", r.slp, target + "_nf");
    return kExitYes;
  }
  if (command == "wp") {
    Session session = parse_session_file(opt.input);
    bool trivial = is_trivial(ct(session.object(target)), backend);
    print_answer(opt, "wp", trivial);
    return trivial ? kExitYes : kExitNo;
  }
  if (command == "core") {
    Session session = parse_session_file(opt.input);
    CompressedTrace c = ccore(ct(session.object(target)), backend);
    print_slp_result(opt, "core", c.slp, target + "_core");
    return kExitYes;
  }
  if (command == "match") return run_match(opt, pattern, text);
  if (command == "conj") {
    Session session = parse_session_file(opt.input);
    bool conjugate =
        ccp_decide(session.object(left), session.object(right), backend);
    print_answer(opt, "conj", conjugate);
    return conjugate ? kExitYes : kExitNo;
  }
  if (command == "rsccp") return run_rsccp(opt, map_spec);
  if (command == "out") return run_out(opt, table, word_spec);
  throw ValidationError("unknown command '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "raag: compressed-word algorithms over partially commutative alphabets"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--backend", opt.backend, "Word engine: reference|compressed")
      ->check(CLI::IsMember({"reference", "compressed"}));
  app.add_option("--guard", opt.guard,
                 "Maximum letters the reference engine may materialize");
  app.add_option("--format", opt.format, "Output format: text|structured")
      ->check(CLI::IsMember({"text", "structured"}));

  std::string target, pattern, text, left, right, map_spec, table, word_spec;

  auto add_in = [&](CLI::App* cmd) {
    cmd->add_option("--in", opt.input, "Session file")->required();
  };

  CLI::App* nf = app.add_subcommand("nf", "Irreducible normal form of a program");
  add_in(nf);
  nf->add_option("--target", target, "Object name")->required();

  CLI::App* wp = app.add_subcommand("wp", "Compressed word problem");
  add_in(wp);
  wp->add_option("--target", target, "Object name")->required();

  CLI::App* core = app.add_subcommand("core", "Cyclically irreducible core");
  add_in(core);
  core->add_option("--target", target, "Object name")->required();

  CLI::App* match = app.add_subcommand("match", "Compressed trace factor test");
  add_in(match);
  match->add_option("--pattern", pattern, "Pattern object")->required();
  match->add_option("--text", text, "Text object")->required();

  CLI::App* conj = app.add_subcommand("conj", "Compressed conjugacy");
  add_in(conj);
  conj->add_option("--left", left, "Left object")->required();
  conj->add_option("--right", right, "Right object")->required();

  CLI::App* rsccp = app.add_subcommand(
      "rsccp", "Restricted simultaneous compressed conjugacy");
  add_in(rsccp);
  rsccp->add_option("--map", map_spec, "letter=NAME[,letter=NAME...]");

  CLI::App* out = app.add_subcommand(
      "out", "Word problem for the outer automorphism group");
  add_in(out);
  out->add_option("--table", table,
                  "Generator table (defaults to all gen declarations)");
  out->add_option("--word", word_spec,
                  "Generator names, outermost first (may be empty)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  std::string command;
  for (auto* sub : {nf, wp, core, match, conj, rsccp, out})
    if (sub->parsed()) command = sub->get_name();

  try {
    return dispatch(command, opt, target, pattern, text, left, right, map_spec,
                    table, word_spec);
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource guard: " << e.what() << '\n';
    return kExitResource;
  } catch (const ValidationError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const raag::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
