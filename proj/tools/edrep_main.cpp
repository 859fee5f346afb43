// edrep: essential dimension of linear representations of finite groups.
// Subcommands cover the full pipeline: character tables, Schur indices,
// Brauer-class independence certificates, ed/cd formulas, and the modular
// rank-variety lower bounds. All I/O is JSON with deterministic output.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "edrep/json_io.hpp"
#include "edrep/numutil.hpp"

using namespace edrep;

namespace {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::BadInput, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::BadInput, std::string("bad JSON in ") + path + ": " + e.what());
  }
  return j;
}

void emit(const Json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) fail(Errc::BadInput, "cannot write " + out_path);
    out << text;
  }
}

std::vector<long> parse_primes(const std::string& csv) {
  std::vector<long> primes;
  std::string cur;
  for (char c : csv + ",") {
    if (c == ',') {
      if (!cur.empty()) primes.push_back(std::stol(cur));
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  return primes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"essential dimension of linear representations of finite groups"};
  app.require_subcommand(1);

  std::string output;
  std::string format = "json";
  unsigned long seed = 0;
  long cap = kDefaultGroupCap;
  app.add_option("-o,--output", output, "write JSON to a file");
  app.add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", seed, "seed for randomized evaluations");
  app.add_option("--cap", cap, "group order cap");

  int exit_code = 0;

  // group
  CLI::App* group = app.add_subcommand("group", "construct groups");
  group->require_subcommand(1);
  {
    auto* gq = group->add_subcommand("quaternion-semidirect",
                                     "Z/p x| Z/4 for a prime p = 3 mod 4");
    auto p = std::make_shared<long>(0);
    gq->add_option("--p", *p, "odd prime congruent to 3 mod 4")->required();
    gq->callback([&, p]() {
      emit(group_to_json(quaternion_semidirect(*p, cap)), output);
    });

    auto* gs = group->add_subcommand(
        "schilling", "generalized quaternion type of order 2s");
    auto s = std::make_shared<long>(0);
    gs->add_option("--s", *s, "power of 2, s >= 4")->required();
    gs->callback([&, s]() {
      emit(group_to_json(schilling_two_group(*s, cap)), output);
    });

    auto* gf = group->add_subcommand("from-file", "closure of generators");
    auto file = std::make_shared<std::string>();
    gf->add_option("file", *file, "group JSON file")->required();
    gf->callback([&, file]() {
      emit(group_to_json(group_from_json(read_json_file(*file), cap)), output);
    });
  }

  // char-table
  {
    auto* ct = app.add_subcommand("char-table", "irreducible character table");
    auto file = std::make_shared<std::string>();
    ct->add_option("group", *file, "group JSON file")->required();
    ct->callback([&, file]() {
      FiniteGroup g = group_from_json(read_json_file(*file), cap);
      CharacterTable t = character_table(g);
      if (format == "text") std::cout << table_to_text(t);
      if (format != "text" || !output.empty()) emit(table_to_json(t), output);
    });
  }

  // schur-index
  {
    auto* si = app.add_subcommand("schur-index", "Schur index strategies");
    auto chi_file = std::make_shared<std::string>();
    auto field_file = std::make_shared<std::string>();
    auto hint = std::make_shared<long>(0);
    si->add_option("char", *chi_file, "character JSON file")->required();
    si->add_option("--field", *field_file, "base field JSON file")->required();
    CLI::Option* hint_opt = si->add_option("--hint", *hint, "user value");
    si->callback([&, chi_file, field_file, hint, hint_opt]() {
      LoadedCharacter lc = character_from_json(read_json_file(*chi_file), cap);
      BaseField k = field_from_json(read_json_file(*field_file));
      CharacterTable t = character_table(*lc.group);
      std::optional<long> h;
      if (hint_opt->count()) h = *hint;
      emit(schur_result_to_json(schur_index(lc.chi, k, t, h)), output);
    });
  }

  // brauer-independence
  {
    auto* bi = app.add_subcommand(
        "brauer-independence", "norm/two-squares independence certificate");
    auto primes = std::make_shared<std::string>();
    bi->add_option("--primes", *primes, "comma-separated primes, all 3 mod 4")
        ->required();
    bi->callback([&, primes]() {
      IndependenceCertificate cert =
          norm_independence_test(parse_primes(*primes));
      emit(independence_to_json(cert), output);
      if (!cert.independent) exit_code = 2;
    });
  }

  // ed
  {
    auto* ed = app.add_subcommand("ed", "essential dimension report");
    auto gfile = std::make_shared<std::string>();
    auto cfile = std::make_shared<std::string>();
    auto kfile = std::make_shared<std::string>();
    auto primes = std::make_shared<std::string>();
    auto hints_raw = std::make_shared<std::vector<std::string>>();
    ed->add_option("--group", *gfile, "group JSON file")->required();
    ed->add_option("--char", *cfile, "character JSON file")->required();
    ed->add_option("--field", *kfile, "base field JSON file")->required();
    ed->add_option("--primes", *primes, "comma-separated primes")->required();
    ed->add_option("--schur-hint", *hints_raw, "ORBITREP=VALUE, repeatable");
    ed->callback([&, gfile, cfile, kfile, primes, hints_raw]() {
      LoadedCharacter lc = character_from_json(read_json_file(*cfile), cap);
      FiniteGroup g = group_from_json(read_json_file(*gfile), cap);
      if (lc.group->order() != g.order())
        fail(Errc::GroupMismatch, "--group and --char disagree");
      SchurHints hints;
      for (const std::string& kv : *hints_raw) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
          fail(Errc::BadInput, "--schur-hint expects ORBITREP=VALUE");
        hints[std::stoi(kv.substr(0, eq))] = std::stol(kv.substr(eq + 1));
      }
      BaseField k = field_from_json(read_json_file(*kfile));
      EdReport r =
          ed_report(*lc.group, k, lc.chi, parse_primes(*primes), hints);
      emit(ed_report_to_json(r), output);
      if (format == "text") {
        std::cout << "factors: " << r.factors.size() << ", upper bound "
                  << r.upper;
        if (r.exact_ed) std::cout << ", exact ed = " << *r.exact_ed;
        std::cout << "\n";
      }
    });
  }

  // cd-weil
  {
    auto* cw = app.add_subcommand(
        "cd-weil", "canonical p-dimension of a Weil transfer");
    auto d = std::make_shared<CsaDescriptor>();
    auto jrank = std::make_shared<long>(0);
    auto p = std::make_shared<long>(0);
    cw->add_option("--center-degree", d->center_degree, "[Z:k]")->required();
    cw->add_option("--deg", d->algebra_degree, "degree of the division algebra")
        ->required();
    cw->add_option("--m", d->m, "rank parameter m")->required();
    CLI::Option* j_opt =
        cw->add_option("--j", *jrank, "non-dividing rank (gcd reduction)");
    cw->add_option("--p", *p, "prime")->required();
    cw->add_flag("--balanced,!--unbalanced", d->balanced, "balancedness flag");
    cw->callback([&, d, jrank, p, j_opt]() {
      Json j;
      if (j_opt->count()) {
        j["cd_p"] = cd_p_weil_gcd(*d, *jrank, *p);
        j["m_used"] = gcd_long(*jrank, d->algebra_degree);
      } else {
        j["cd_p"] = cd_p_weil(*d, *p);
        j["m_used"] = d->m;
      }
      j["p"] = *p;
      j["descriptor"] = {{"center_degree", d->center_degree},
                         {"algebra_degree", d->algebra_degree},
                         {"m", d->m},
                         {"balanced", d->balanced}};
      emit(j, output);
    });
  }

  // rank-variety
  {
    auto* rv =
        app.add_subcommand("rank-variety", "rank variety of a commuting pair");
    auto file = std::make_shared<std::string>();
    rv->add_option("rep", *file, "modular representation JSON file")
        ->required();
    rv->callback([&, file]() {
      PointSet1 v = rank_variety(modular_rep_from_json(read_json_file(*file)));
      emit(point_set_to_json(v), output);
      if (!v.unresolved.empty()) exit_code = 2;
    });
  }

  // modular-lower-bound
  {
    auto* ml = app.add_subcommand("modular-lower-bound",
                                  "certified ed lower bound in char p");
    auto n = std::make_shared<long>(0);
    auto q = std::make_shared<long>(2);
    auto exact = std::make_shared<bool>(false);
    ml->add_option("--n", *n, "number of points / variables")->required();
    ml->add_option("--q", *q, "base field size (prime)");
    ml->add_flag("--exact-trdeg", *exact, "exact dependence elimination");
    ml->callback([&, n, q, exact]() {
      TrdegConfig cfg;
      cfg.seed = seed;
      cfg.exact = *exact;
      emit(modular_lower_bound_to_json(ed_lower_bound_modular(*n, *q, cfg)),
           output);
    });
  }

  // family
  {
    auto* fam = app.add_subcommand("family", "emit named family artifacts");
    auto schilling = std::make_shared<bool>(false);
    auto l = std::make_shared<long>(0);
    auto qprime = std::make_shared<long>(0);
    auto conic = std::make_shared<std::string>();
    auto prefix = std::make_shared<std::string>();
    fam->add_flag("--schilling", *schilling, "Schilling 2-group family");
    fam->add_option("--l", *l, "Schilling parameter, group order 2^(l+3)");
    CLI::Option* q_opt = fam->add_option("--quaternion-semidirect", *qprime,
                                         "prime p = 3 mod 4");
    CLI::Option* c_opt = fam->add_option(
        "--conic-primes", *conic, "comma-separated primes, all 3 mod 4");
    fam->add_option("--out-prefix", *prefix,
                    "write <prefix>group/char/field.json");
    fam->callback([&, schilling, l, qprime, conic, prefix, q_opt, c_opt]() {
      auto emit_triple = [&](const FiniteGroup& g, const Character& chi,
                             const BaseField& k) {
        if (prefix->empty()) {
          Json j;
          j["group"] = group_to_json(g);
          j["character"] = character_to_json(chi);
          j["field"] = field_to_json(k);
          emit(j, output);
        } else {
          emit(group_to_json(g), *prefix + "group.json");
          emit(character_to_json(chi), *prefix + "char.json");
          emit(field_to_json(k), *prefix + "field.json");
        }
      };
      if (*schilling) {
        if (*l < 0 || *l > 8) fail(Errc::BadInput, "need 0 <= l <= 8");
        FiniteGroup g = schilling_two_group(1L << (*l + 2), cap);
        CharacterTable t = character_table(g);
        emit_triple(g, designated_schilling_character(g, t),
                    BaseField::rationals());
      } else if (q_opt->count()) {
        FiniteGroup g = quaternion_semidirect(*qprime, cap);
        CharacterTable t = character_table(g);
        emit_triple(g, designated_quaternion_character(g, t),
                    quaternion_family_field({*qprime}));
      } else if (c_opt->count()) {
        ConicFamily f = conic_family(parse_primes(*conic), cap);
        emit_triple(*f.group, f.character, f.field);
      } else {
        fail(Errc::BadInput,
             "choose one of --schilling, --quaternion-semidirect, "
             "--conic-primes");
      }
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return errc_is_certificate_failure(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
