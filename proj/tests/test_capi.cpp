#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <string>

#include "freefix/capi.h"

using Json = nlohmann::json;

namespace {

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  ffx_string_free(s);
  return out;
}

Json take_json(char* s) { return Json::parse(take(s)); }

struct Endo {
  ffx_endo* p = nullptr;
  explicit Endo(const char* json) {
    REQUIRE(ffx_endo_from_json(json, &p) == FFX_OK);
  }
  ~Endo() { ffx_endo_free(p); }
};

struct Graph {
  ffx_graph* p = nullptr;
  Graph(int rank, std::initializer_list<const char*> gens) {
    std::vector<const char*> v(gens);
    REQUIRE(ffx_graph_fold(rank, v.data(), v.size(), &p) == FFX_OK);
  }
  ~Graph() { ffx_graph_free(p); }
};

}  // namespace

TEST_CASE("version and error slots") {
  CHECK(std::string(ffx_version()).find('.') != std::string::npos);
  ffx_word* w = nullptr;
  CHECK(ffx_word_parse(2, "xyz", &w) == FFX_ERR_INPUT);
  CHECK(std::string(ffx_last_error()).size() > 0);
  CHECK(ffx_word_parse(2, nullptr, &w) == FFX_ERR_INPUT);
  CHECK(ffx_word_parse(2, "ab", nullptr) == FFX_ERR_INPUT);
}

TEST_CASE("word operations") {
  ffx_word* w = nullptr;
  REQUIRE(ffx_word_parse(2, "abBA", &w) == FFX_OK);
  CHECK(take(ffx_word_str(w)) == "1");
  CHECK(ffx_word_rank(w) == 2);
  CHECK(ffx_word_length(w) == 0);
  ffx_word_free(w);

  ffx_word* u = nullptr;
  ffx_word* v = nullptr;
  REQUIRE(ffx_word_parse(2, "ab", &u) == FFX_OK);
  REQUIRE(ffx_word_parse(2, "BA", &v) == FFX_OK);
  ffx_word* cat = nullptr;
  REQUIRE(ffx_word_concat(u, v, &cat) == FFX_OK);
  CHECK(ffx_word_length(cat) == 0);
  ffx_word* inv = nullptr;
  REQUIRE(ffx_word_invert(u, &inv) == FFX_OK);
  CHECK(take(ffx_word_str(inv)) == "BA");

  ffx_word* big = nullptr;
  REQUIRE(ffx_word_parse(2, "BBabb", &big) == FFX_OK);
  ffx_word* core = nullptr;
  ffx_word* conj = nullptr;
  REQUIRE(ffx_word_cyclic_reduce(big, &core, &conj) == FFX_OK);
  CHECK(take(ffx_word_str(core)) == "a");
  CHECK(take(ffx_word_str(conj)) == "BB");

  ffx_word* w3 = nullptr;
  REQUIRE(ffx_word_parse(3, "c", &w3) == FFX_OK);
  ffx_word* bad = nullptr;
  CHECK(ffx_word_concat(u, w3, &bad) == FFX_ERR_RANK_MISMATCH);

  ffx_word_free(u);
  ffx_word_free(v);
  ffx_word_free(cat);
  ffx_word_free(inv);
  ffx_word_free(big);
  ffx_word_free(core);
  ffx_word_free(conj);
  ffx_word_free(w3);
}

TEST_CASE("graph operations and json round trip") {
  Graph g(2, {"a", "Bab"});
  CHECK(ffx_graph_rank(g.p) == 2);
  CHECK(ffx_graph_ambient_rank(g.p) == 2);
  int member = -1;
  REQUIRE(ffx_graph_member(g.p, "aBab", &member) == FFX_OK);
  CHECK(member == 1);
  REQUIRE(ffx_graph_member(g.p, "b", &member) == FFX_OK);
  CHECK(member == 0);

  Json j = take_json(ffx_graph_json(g.p));
  CHECK(j.at("rank") == 2);
  ffx_graph* back = nullptr;
  REQUIRE(ffx_graph_from_json(j.dump().c_str(), &back) == FFX_OK);
  CHECK(take(ffx_graph_json(back)) == take(ffx_graph_json(g.p)));
  ffx_graph_free(back);

  Json basis = take_json(ffx_graph_basis_json(g.p));
  CHECK(basis.size() == 2);

  Graph h(2, {"a", "bab"});
  Graph k(2, {"ab", "ba"});
  char* out = nullptr;
  REQUIRE(ffx_graph_pullback_json(h.p, k.p, &out) == FFX_OK);
  Json comps = take_json(out);
  REQUIRE(!comps.empty());
  CHECK(comps[0].at("based") == true);
}

TEST_CASE("checks over graphs") {
  Graph impure(2, {"aa", "b"});
  char* out = nullptr;
  REQUIRE(ffx_check_pure_json(impure.p, 4, &out) == FFX_OK);
  Json rep = take_json(out);
  CHECK(rep.at("pure_up_to_bound") == false);
  CHECK(rep.at("witness") == "a");

  Graph fix(2, {"a", "Bab"});
  REQUIRE(ffx_check_inert_json(fix.p, 30, 4, 7, &out) == FFX_OK);
  rep = take_json(out);
  CHECK(rep.at("violations").empty());

  const char* conjs[] = {"1"};
  REQUIRE(ffx_check_coset_bound_json(fix.p, "Bab", conjs, 1, &out) == FFX_OK);
  rep = take_json(out);
  CHECK(rep.at("ok") == true);
}

TEST_CASE("endomorphisms through the C interface") {
  Endo f("{\"rank\":2,\"images\":[\"a\",\"ab\"]}");
  CHECK(ffx_endo_rank(f.p) == 2);
  char* img = nullptr;
  REQUIRE(ffx_endo_apply(f.p, "Bab", &img) == FFX_OK);
  CHECK(take(img) == "Bab");
  int is_auto = 0;
  REQUIRE(ffx_endo_is_automorphism(f.p, &is_auto) == FFX_OK);
  CHECK(is_auto == 1);
  ffx_endo* inv = nullptr;
  REQUIRE(ffx_endo_inverse(f.p, &inv) == FFX_OK);
  Json j = take_json(ffx_endo_json(inv));
  CHECK(j.at("images")[1] == "Ab");
  ffx_endo_free(inv);

  const char* imgs[] = {"a", "a"};
  ffx_endo* notauto = nullptr;
  REQUIRE(ffx_endo_new(2, imgs, 2, &notauto) == FFX_OK);
  ffx_endo* bad = nullptr;
  CHECK(ffx_endo_inverse(notauto, &bad) == FFX_ERR_NOT_AUTOMORPHISM);
  ffx_endo_free(notauto);
}

TEST_CASE("fixed subgroup reports") {
  Endo f("{\"rank\":2,\"images\":[\"a\",\"ab\"]}");
  ffx_budget budget{8, 0, 2};
  char* out = nullptr;
  REQUIRE(ffx_fix_json(f.p, &budget, &out) == FFX_OK);
  Json fix = take_json(out);
  CHECK(fix.at("rank") == 2);
  CHECK(fix.at("verdict") == "bounded-complete");
  CHECK(fix.at("max_len") == 8);
  CHECK(fix.at("displacement_cap") > 0);

  REQUIRE(ffx_fix_json(f.p, nullptr, &out) == FFX_OK);  // defaults
  CHECK(take_json(out).at("rank") == 2);

  REQUIRE(ffx_eigengroups_json(f.p, &budget, &out) == FFX_OK);
  Json eig = take_json(out);
  CHECK(eig.size() >= 2);

  REQUIRE(ffx_bh_check_json(f.p, &budget, &out) == FFX_OK);
  Json bh = take_json(out);
  CHECK(bh.at("class_count") == 1);
  CHECK(bh.at("sum_reduced_rank") == 1);
  CHECK(bh.at("bound_ok") == true);

  REQUIRE(ffx_isogredience_json(f.p, &budget, &out) == FFX_OK);
  Json iso = take_json(out);
  CHECK(iso.at("partition").at("classes").size() == 1);
}

TEST_CASE("free factor system interface") {
  const char* s1 = "{\"rank\":3,\"classes\":[[\"a\",\"b\"]]}";
  const char* s2 = "{\"rank\":3,\"classes\":[[\"b\",\"c\"]]}";
  char* out = nullptr;
  REQUIRE(ffx_ffs_wedge_json(s1, s2, &out) == FFX_OK);
  Json w = take_json(out);
  REQUIRE(w.at("classes").size() == 1);

  REQUIRE(ffx_ffs_cx_json(s1, &out) == FFX_OK);
  CHECK(take_json(out).at("complexity") == Json::array({2}));

  REQUIRE(ffx_ffs_leq_json(w.dump().c_str(), s1, &out) == FFX_OK);
  CHECK(take_json(out).at("leq") == true);
  REQUIRE(ffx_ffs_leq_json(s1, w.dump().c_str(), &out) == FFX_OK);
  CHECK(take_json(out).at("leq") == false);

  Endo f("{\"rank\":3,\"images\":[\"a\",\"ab\",\"c\"]}");
  REQUIRE(ffx_ffs_invariant_json(s1, f.p, &out) == FFX_OK);
  CHECK(take_json(out).at("invariant") == true);

  Graph prim(2, {"abA"});
  REQUIRE(ffx_ffs_is_free_factor_json(prim.p, 6, &out) == FFX_OK);
  CHECK(take_json(out).at("verdict") == "yes");

  REQUIRE(ffx_ffs_certify_json("{\"rank\":2,\"classes\":[[\"a\"],[\"b\"]]}", 3,
                               6, &out) == FFX_OK);
  CHECK(take_json(out).at("certified") == true);
}

TEST_CASE("constructions and verifiers through the C interface") {
  Endo f("{\"rank\":2,\"images\":[\"a\",\"ab\"]}");
  ffx_endo* ext = nullptr;
  REQUIRE(ffx_construct_extend(f.p, 4, nullptr, nullptr, &ext) == FFX_OK);
  CHECK(ffx_endo_rank(ext) == 4);

  ffx_endo* prod = nullptr;
  REQUIRE(ffx_construct_product(f.p, f.p, nullptr, &prod) == FFX_OK);
  Json pj = take_json(ffx_endo_json(prod));
  CHECK(pj.at("images")[2] == "c");
  CHECK(pj.at("images")[3] == "cd");

  ffx_endo* stable = nullptr;
  REQUIRE(ffx_construct_stable(f.p, "a", "a", 1, &stable) == FFX_OK);
  CHECK(ffx_endo_rank(stable) == 3);
  CHECK(ffx_construct_stable(f.p, "aa", "a", 1, &stable) ==
        FFX_ERR_PRECONDITION);

  char* out = nullptr;
  ffx_budget budget{6, 0, 2};
  ffx_endo* id1 = nullptr;
  const char* one[] = {"a"};
  REQUIRE(ffx_endo_new(1, one, 1, &id1) == FFX_OK);
  REQUIRE(ffx_construct_good_r_json(id1, "a", "a", -2, 2, &budget, &out) ==
          FFX_OK);
  Json recs = take_json(out);
  REQUIRE(recs.size() == 5);
  for (const auto& r : recs) {
    CHECK(r.at("good") == (r.at("r") != -1));
  }
  ffx_endo_free(id1);

  ffx_budget vb{8, 0, 2};
  REQUIRE(ffx_verify_mainconnex_json(
              stable,
              "{\"rank\":3,\"case\":\"iii\",\"h_generators\":[\"a\",\"b\"],"
              "\"y\":\"c\",\"h\":\"a\",\"h_prime\":\"aa\"}",
              &vb, &out) == FFX_OK);
  Json rep = take_json(out);
  CHECK(rep.at("pass") == true);

  Graph h(2, {"a"});
  REQUIRE(ffx_verify_imagey_json(f.p, h.p, "b", "a", &out) == FFX_OK);
  rep = take_json(out);
  CHECK(rep.at("fixed") == true);

  REQUIRE(ffx_verify_collins_turner_json(
              f.p, "{\"h_generators\":[\"a\"],\"y\":\"b\",\"h\":\"a\",\"r\":1}",
              &vb, &out) == FFX_OK);
  CHECK(take_json(out).at("pass") == true);

  ffx_endo_free(ext);
  ffx_endo_free(prod);
  ffx_endo_free(stable);
}

TEST_CASE("null arguments are input errors") {
  CHECK(ffx_graph_fold(2, nullptr, 1, nullptr) == FFX_ERR_INPUT);
  CHECK(ffx_endo_from_json(nullptr, nullptr) == FFX_ERR_INPUT);
  char* out = nullptr;
  CHECK(ffx_fix_json(nullptr, nullptr, &out) == FFX_ERR_INPUT);
  CHECK(ffx_ffs_cx_json("not json", &out) == FFX_ERR_INPUT);
}
