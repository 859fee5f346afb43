#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "edrep/eddim.hpp"
#include "edrep/json_io.hpp"

using namespace edrep;

TEST_CASE("group JSON round trip") {
  FiniteGroup s3 = from_generators({{1, 2, 0}, {1, 0, 2}}, kDefaultGroupCap,
                                   {"r", "t"});
  Json j = group_to_json(s3);
  FiniteGroup back = group_from_json(j);
  CHECK(back.order() == 6);
  CHECK(back.labels() == std::vector<std::string>{"r", "t"});
  CHECK(group_to_json(back) == j);

  // family groups rebuild through their constructors
  FiniteGroup q = quaternion_semidirect(7);
  Json jq = group_to_json(q);
  FiniteGroup qback = group_from_json(jq);
  CHECK(qback.family().kind == FamilyTag::Kind::QuaternionSemidirect);
  CHECK(qback.order() == 28);
  CHECK(group_to_json(qback) == jq);

  FiniteGroup prod = direct_product({quaternion_semidirect(3),
                                     schilling_two_group(4)});
  Json jp = group_to_json(prod);
  FiniteGroup pback = group_from_json(jp);
  CHECK(pback.order() == 96);
  CHECK(pback.family().kind == FamilyTag::Kind::Product);
}

TEST_CASE("cyclotomic and field JSON round trips") {
  CycloNum x = CycloNum::zeta(12, 5) + CycloNum(Rat(3, 2));
  Json j = cyclo_to_json(x);
  CHECK(cyclo_from_json(j) == x);
  CHECK(cyclo_to_json(cyclo_from_json(j)) == j);

  BaseField k = BaseField::real_cyclotomic(21);
  Json jk = field_to_json(k);
  BaseField kback = field_from_json(jk);
  CHECK(kback.conductor == k.conductor);
  CHECK(kback.subgroup == k.subgroup);
  CHECK_THROWS_AS(
      field_from_json(Json{{"conductor", 8}, {"fixing_subgroup", {1, 3, 5}}}),
      Error);
}

TEST_CASE("character JSON round trip remaps class order") {
  FiniteGroup g = schilling_two_group(4);
  CharacterTable t = character_table(g);
  const Character* chi2 = nullptr;
  for (const Character& chi : t.irreducibles)
    if (chi.degree() == 2) chi2 = &chi;
  REQUIRE(chi2);

  Json j = character_to_json(*chi2);
  LoadedCharacter back = character_from_json(j);
  CHECK(back.group->order() == 8);
  CHECK(back.chi.degree() == 2);
  // values match classwise through the representative permutations
  for (int c = 0; c < g.num_classes(); ++c) {
    int idx = back.group->index_of(g.elements()[g.class_rep(c)]);
    REQUIRE(idx >= 0);
    CHECK(back.chi.values[back.group->class_of(idx)] == chi2->values[c]);
  }
}

TEST_CASE("modular rep and point set JSON") {
  ProjPoint p1 = make_point(MFrac::constant(2, 2, 1), MFrac::variable(2, 2, 0));
  ProjPoint p2 = make_point(MFrac::constant(2, 2, 1),
                            parse_mfrac("(a1+1)/a2", 2, 2));
  ModularRep rep = union_rep({p1, p2}, 2);
  Json j = modular_rep_to_json(rep);
  ModularRep back = modular_rep_from_json(j);
  CHECK(back.n == rep.n);
  CHECK(back.m1 == rep.m1);
  CHECK(back.m2 == rep.m2);
  CHECK(modular_rep_to_json(back) == j);

  PointSet1 v = rank_variety(rep);
  Json jv = point_set_to_json(v);
  CHECK(jv["points"].size() == 2);
  CHECK(jv["whole_line"] == false);
}

TEST_CASE("deterministic output") {
  FiniteGroup g = quaternion_semidirect(3);
  CharacterTable t = character_table(g);
  std::string a = table_to_json(t).dump(2);
  std::string b = table_to_json(character_table(g)).dump(2);
  CHECK(a == b);

  IndependenceCertificate c1 = norm_independence_test({3, 7, 11});
  IndependenceCertificate c2 = norm_independence_test({3, 7, 11});
  CHECK(independence_to_json(c1).dump() == independence_to_json(c2).dump());
}

TEST_CASE("ed report JSON carries the certificates") {
  FiniteGroup q8 = schilling_two_group(4);
  CharacterTable t = character_table(q8);
  const Character* chi2 = nullptr;
  for (const Character& chi : t.irreducibles)
    if (chi.degree() == 2) chi2 = &chi;
  EdReport r = ed_report(q8, BaseField::rationals(), *chi2, {2}, {}, {}, &t);
  Json j = ed_report_to_json(r);
  CHECK(j["exact_ed"] == 1);
  CHECK(j["factors"].size() == 1);
  CHECK(j["factors"][0]["schur"]["value"] == 2);
  CHECK(j["factors"][0]["schur"]["strategy"] == "PGroupRule");
  CHECK(j["lower_by_prime"]["2"] == 1);
  CHECK(j["upper"] == 1);
}
