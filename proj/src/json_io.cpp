#include "edrep/json_io.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace edrep {

namespace {

const char* family_kind_name(FamilyTag::Kind k) {
  switch (k) {
    case FamilyTag::Kind::QuaternionSemidirect: return "quaternion-semidirect";
    case FamilyTag::Kind::SchillingTwoGroup: return "schilling";
    case FamilyTag::Kind::Product: return "product";
    case FamilyTag::Kind::None: return "none";
  }
  return "none";
}

Json family_to_json(const FamilyTag& t) {
  Json j;
  j["kind"] = family_kind_name(t.kind);
  if (t.kind == FamilyTag::Kind::QuaternionSemidirect) j["p"] = t.p;
  if (t.kind == FamilyTag::Kind::SchillingTwoGroup) j["s"] = t.s;
  if (t.kind == FamilyTag::Kind::Product) {
    Json factors = Json::array();
    for (const FamilyTag& f : t.factors) factors.push_back(family_to_json(f));
    j["factors"] = factors;
  }
  return j;
}

// family groups rebuild through their constructors so the element
// enumeration (and hence class order) matches the emitting process
std::optional<FiniteGroup> rebuild_from_family(const Json& j, long cap) {
  if (!j.contains("family")) return std::nullopt;
  const Json& f = j["family"];
  std::string kind = f.value("kind", "none");
  if (kind == "quaternion-semidirect")
    return quaternion_semidirect(f.at("p").get<long>(), cap);
  if (kind == "schilling")
    return schilling_two_group(f.at("s").get<long>(), cap);
  if (kind == "product") {
    std::vector<FiniteGroup> parts;
    for (const Json& sub : f.at("factors")) {
      Json wrapper;
      wrapper["family"] = sub;
      std::optional<FiniteGroup> part = rebuild_from_family(wrapper, cap);
      if (!part) return std::nullopt;
      parts.push_back(std::move(*part));
    }
    return direct_product(parts, cap);
  }
  return std::nullopt;
}

}  // namespace

Json group_to_json(const FiniteGroup& g) {
  Json j;
  j["degree"] = g.degree();
  Json gens = Json::array();
  for (const Perm& p : g.generators()) gens.push_back(p);
  j["generators"] = gens;
  j["labels"] = g.labels();
  if (g.family().kind != FamilyTag::Kind::None)
    j["family"] = family_to_json(g.family());
  return j;
}

FiniteGroup group_from_json(const Json& j, long cap) {
  if (std::optional<FiniteGroup> g = rebuild_from_family(j, cap)) return *g;
  std::vector<Perm> gens;
  for (const Json& p : j.at("generators")) gens.push_back(p.get<Perm>());
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
  return from_generators(gens, cap, labels);
}

Json cyclo_to_json(const CycloNum& x) {
  Json j;
  j["conductor"] = x.conductor();
  Json coeffs = Json::array();
  for (const Rat& c : x.coeffs()) coeffs.push_back(rat_str(c));
  j["coeffs"] = coeffs;
  return j;
}

CycloNum cyclo_from_json(const Json& j) {
  long e = j.at("conductor").get<long>();
  std::vector<Rat> coeffs;
  for (const Json& c : j.at("coeffs")) coeffs.push_back(parse_rat(c.get<std::string>()));
  return CycloNum::from_coeffs(e, std::move(coeffs));
}

Json field_to_json(const BaseField& f) {
  Json j;
  j["conductor"] = f.conductor;
  j["fixing_subgroup"] = f.subgroup;
  j["description"] = f.description;
  return j;
}

BaseField field_from_json(const Json& j) {
  BaseField f;
  f.conductor = j.at("conductor").get<long>();
  f.subgroup = j.at("fixing_subgroup").get<std::vector<long>>();
  f.description = j.value("description", "");
  std::sort(f.subgroup.begin(), f.subgroup.end());
  f.validate();
  return f;
}

Json character_to_json(const Character& chi) {
  Json j;
  j["group"] = group_to_json(*chi.group);
  Json values = Json::array();
  for (const CycloNum& v : chi.values) values.push_back(cyclo_to_json(v));
  j["values"] = values;
  Json reps = Json::array();
  for (int c = 0; c < chi.group->num_classes(); ++c)
    reps.push_back(chi.group->elements()[chi.group->class_rep(c)]);
  j["class_reps"] = reps;
  return j;
}

LoadedCharacter character_from_json(const Json& j, long cap) {
  LoadedCharacter out;
  out.group = std::make_shared<FiniteGroup>(group_from_json(j.at("group"), cap));
  out.chi.group = out.group.get();
  std::vector<CycloNum> raw;
  for (const Json& v : j.at("values")) raw.push_back(cyclo_from_json(v));
  if (static_cast<int>(raw.size()) != out.group->num_classes())
    fail(Errc::BadInput, "character has wrong number of class values");
  out.chi.values.assign(raw.size(), CycloNum(0));
  if (j.contains("class_reps")) {
    std::vector<bool> hit(raw.size(), false);
    const Json& reps = j["class_reps"];
    if (reps.size() != raw.size())
      fail(Errc::BadInput, "class_reps size mismatch");
    for (size_t i = 0; i < raw.size(); ++i) {
      int idx = out.group->index_of(reps[i].get<Perm>());
      if (idx < 0) fail(Errc::BadInput, "class representative not in group");
      int c = out.group->class_of(idx);
      if (hit[c]) fail(Errc::BadInput, "duplicate class representative");
      hit[c] = true;
      out.chi.values[c] = raw[i];
    }
  } else {
    out.chi.values = std::move(raw);
  }
  return out;
}

Json table_to_json(const CharacterTable& t) {
  Json j;
  j["group"] = group_to_json(*t.group);
  Json rows = Json::array();
  for (const Character& chi : t.irreducibles) {
    Json row = Json::array();
    for (const CycloNum& v : chi.values) row.push_back(cyclo_to_json(v));
    rows.push_back(row);
  }
  j["irreducibles"] = rows;
  Json reps = Json::array();
  for (int c = 0; c < t.group->num_classes(); ++c)
    reps.push_back(t.group->elements()[t.group->class_rep(c)]);
  j["class_reps"] = reps;
  Json sizes = Json::array();
  for (int c = 0; c < t.group->num_classes(); ++c)
    sizes.push_back(t.group->class_size(c));
  j["class_sizes"] = sizes;
  return j;
}

std::string table_to_text(const CharacterTable& t) {
  const FiniteGroup& g = *t.group;
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head = {"class size"};
  for (int c = 0; c < g.num_classes(); ++c)
    head.push_back(std::to_string(g.class_size(c)));
  cells.push_back(head);
  for (size_t i = 0; i < t.irreducibles.size(); ++i) {
    std::vector<std::string> row = {"chi_" + std::to_string(i + 1)};
    for (const CycloNum& v : t.irreducibles[i].values) row.push_back(v.str());
    cells.push_back(row);
  }
  std::vector<size_t> width(cells[0].size(), 0);
  for (const auto& row : cells)
    for (size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  for (const auto& row : cells) {
    for (size_t c = 0; c < row.size(); ++c) {
      os << row[c];
      if (c + 1 < row.size())
        os << std::string(width[c] - row[c].size() + 2, ' ');
    }
    os << "\n";
  }
  return os.str();
}

Json schur_result_to_json(const SchurIndexResult& r) {
  Json j;
  j["value"] = r.value;
  j["strategy"] = strategy_name(r.strategy);
  j["certificate"] = r.certificate;
  return j;
}

Json independence_to_json(const IndependenceCertificate& c) {
  Json j;
  j["independent"] = c.independent;
  Json rows = Json::array();
  for (const IndependenceRow& row : c.rows) {
    Json r;
    r["subset"] = row.subset;
    r["norm"] = row.norm.get_str();
    r["factorization"] = row.factorization;
    r["passes"] = row.passes;
    r["reason"] = row.reason;
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j;
}

Json ed_report_to_json(const EdReport& r) {
  Json j;
  Json factors = Json::array();
  for (size_t i = 0; i < r.factors.size(); ++i) {
    const KIrredFactor& f = r.factors[i];
    Json jf;
    jf["orbit"] = f.orbit;
    jf["r"] = f.r;
    jf["multiplicity"] = f.m_raw;
    jf["m"] = f.m;
    jf["degree"] = f.degree;
    jf["schur"] = schur_result_to_json(f.schur);
    Json edp;
    for (const auto& [p, v] : r.factor_ed_p[i]) edp[std::to_string(p)] = v;
    jf["ed_p"] = edp;
    Json exact;
    for (const auto& [p, v] : r.factor_exact[i]) exact[std::to_string(p)] = v;
    jf["exact_at"] = exact;
    factors.push_back(jf);
  }
  j["factors"] = factors;
  j["primes"] = r.primes;
  Json lower;
  for (const auto& [p, v] : r.lower_by_prime) lower[std::to_string(p)] = v;
  j["lower_by_prime"] = lower;
  j["upper"] = r.upper;
  j["bound_n2"] = r.n2_bound;
  j["bound_g2"] = r.g2_bound;
  if (r.exact_ed) {
    j["exact_ed"] = *r.exact_ed;
    j["exact_justification"] = r.exact_justification;
  }
  if (r.conic_certificate)
    j["conic_certificate"] = independence_to_json(*r.conic_certificate);
  j["notes"] = r.notes;
  return j;
}

Json modular_rep_to_json(const ModularRep& rep) {
  Json j;
  j["p"] = rep.p;
  j["n"] = rep.n;
  j["variables"] = rep.nvars;
  auto mat = [](const std::vector<std::vector<MFrac>>& m) {
    Json rows = Json::array();
    for (const auto& row : m) {
      Json r = Json::array();
      for (const MFrac& x : row) r.push_back(x.str());
      rows.push_back(r);
    }
    return rows;
  };
  j["m1"] = mat(rep.m1);
  j["m2"] = mat(rep.m2);
  return j;
}

ModularRep modular_rep_from_json(const Json& j) {
  ModularRep rep;
  rep.p = j.at("p").get<long>();
  rep.n = j.at("n").get<int>();
  rep.nvars = j.at("variables").get<int>();
  if (rep.nvars < 0 || rep.nvars > kMaxVars - 1)
    fail(Errc::BadInput, "variable count out of range");
  auto mat = [&](const Json& rows) {
    std::vector<std::vector<MFrac>> m;
    for (const Json& row : rows) {
      std::vector<MFrac> r;
      for (const Json& x : row)
        r.push_back(parse_mfrac(x.get<std::string>(), rep.p, rep.nvars));
      m.push_back(std::move(r));
    }
    return m;
  };
  rep.m1 = mat(j.at("m1"));
  rep.m2 = mat(j.at("m2"));
  return rep;
}

Json point_set_to_json(const PointSet1& ps) {
  Json j;
  Json points = Json::array();
  for (const ProjPoint& pt : ps.points) {
    Json pair = Json::array();
    pair.push_back(pt.x1.str());
    pair.push_back(pt.x2.str());
    points.push_back(pair);
  }
  j["points"] = points;
  j["whole_line"] = ps.whole_line;
  j["unresolved"] = ps.unresolved;
  return j;
}

Json modular_lower_bound_to_json(const ModularLowerBound& b) {
  Json j;
  j["n"] = b.n;
  j["dimension"] = b.dim;
  j["variety"] = point_set_to_json(b.variety);
  j["trdeg"] = b.trdeg;
  j["statement"] = b.statement;
  return j;
}

}  // namespace edrep
