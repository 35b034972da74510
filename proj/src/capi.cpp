#include "freefix/capi.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include "freefix/constructions.hpp"
#include "freefix/endomorphism.hpp"
#include "freefix/error.hpp"
#include "freefix/factor_system.hpp"
#include "freefix/fixed_search.hpp"
#include "freefix/json_io.hpp"
#include "freefix/subgroup_graph.hpp"
#include "freefix/word.hpp"

struct ffx_word {
  freefix::Word w;
};
struct ffx_graph {
  freefix::SubgroupGraph g;
};
struct ffx_endo {
  freefix::Endomorphism f;
};

namespace {

using freefix::Endomorphism;
using freefix::Error;
using freefix::ErrorCode;
using freefix::FixedSearchBudget;
using freefix::SubgroupGraph;
using freefix::Word;
using Json = freefix::io::Json;

thread_local std::string g_last_error;

ffx_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInput: return FFX_ERR_INPUT;
    case ErrorCode::kDomain: return FFX_ERR_DOMAIN;
    case ErrorCode::kRankMismatch: return FFX_ERR_RANK_MISMATCH;
    case ErrorCode::kNotAutomorphism: return FFX_ERR_NOT_AUTOMORPHISM;
    case ErrorCode::kNotInvariant: return FFX_ERR_NOT_INVARIANT;
    case ErrorCode::kPrecondition: return FFX_ERR_PRECONDITION;
  }
  return FFX_ERR_INTERNAL;
}

template <typename Fn>
ffx_status guarded(Fn&& fn) {
  try {
    fn();
    return FFX_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FFX_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

char* dup_json(const Json& j) { return dup_string(j.dump(2)); }

FixedSearchBudget budget_of(const ffx_budget* b) {
  FixedSearchBudget out;
  if (b) {
    out.max_len = b->max_len;
    out.displacement_cap = b->displacement_cap;
    out.eigenvalue_len = b->eigenvalue_len;
  }
  return out;
}

std::vector<Word> parse_words(int rank, const char* const* texts,
                              size_t count) {
  std::vector<Word> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    if (!texts[i]) freefix::fail(ErrorCode::kInput, "null word text");
    out.push_back(Word::parse(texts[i], rank));
  }
  return out;
}

Json parse_json(const char* text) {
  if (!text) freefix::fail(ErrorCode::kInput, "null JSON text");
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    freefix::fail(ErrorCode::kInput, std::string("JSON parse: ") + e.what());
  }
}

void require(const void* p, const char* what) {
  if (!p) freefix::fail(ErrorCode::kInput, std::string("null ") + what);
}

}  // namespace

extern "C" {

const char* ffx_version(void) { return "1.0.0"; }

const char* ffx_last_error(void) { return g_last_error.c_str(); }

void ffx_string_free(char* s) { std::free(s); }

/* Words ---------------------------------------------------------------- */

ffx_status ffx_word_parse(int rank, const char* text, ffx_word** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new ffx_word{Word::parse(text, rank)};
  });
}

void ffx_word_free(ffx_word* w) { delete w; }

char* ffx_word_str(const ffx_word* w) {
  if (!w) return nullptr;
  return dup_string(w->w.str());
}

int ffx_word_rank(const ffx_word* w) { return w ? w->w.rank() : 0; }

size_t ffx_word_length(const ffx_word* w) { return w ? w->w.size() : 0; }

ffx_status ffx_word_concat(const ffx_word* u, const ffx_word* v,
                           ffx_word** out) {
  return guarded([&] {
    require(u, "word");
    require(v, "word");
    require(out, "out");
    *out = new ffx_word{freefix::concat(u->w, v->w)};
  });
}

ffx_status ffx_word_invert(const ffx_word* w, ffx_word** out) {
  return guarded([&] {
    require(w, "word");
    require(out, "out");
    *out = new ffx_word{freefix::invert(w->w)};
  });
}

ffx_status ffx_word_cyclic_reduce(const ffx_word* w, ffx_word** core,
                                  ffx_word** conjugator) {
  return guarded([&] {
    require(w, "word");
    require(core, "out");
    require(conjugator, "out");
    auto [c, p] = freefix::cyclic_reduce(w->w);
    *core = new ffx_word{std::move(c)};
    *conjugator = new ffx_word{std::move(p)};
  });
}

/* Subgroup graphs -------------------------------------------------------- */

ffx_status ffx_graph_fold(int rank, const char* const* generators,
                          size_t count, ffx_graph** out) {
  return guarded([&] {
    require(out, "out");
    if (count > 0) require(generators, "generators");
    auto gens = parse_words(rank, generators, count);
    *out = new ffx_graph{SubgroupGraph::fold(gens, rank)};
  });
}

ffx_status ffx_graph_from_json(const char* json_text, ffx_graph** out) {
  return guarded([&] {
    require(out, "out");
    *out = new ffx_graph{freefix::io::subgroup_from_json(parse_json(json_text))};
  });
}

void ffx_graph_free(ffx_graph* g) { delete g; }

int ffx_graph_rank(const ffx_graph* g) { return g ? g->g.rank() : 0; }

int ffx_graph_ambient_rank(const ffx_graph* g) {
  return g ? g->g.ambient_rank() : 0;
}

ffx_status ffx_graph_member(const ffx_graph* g, const char* word_text,
                            int* out) {
  return guarded([&] {
    require(g, "graph");
    require(word_text, "word");
    require(out, "out");
    *out = g->g.member(Word::parse(word_text, g->g.ambient_rank())) ? 1 : 0;
  });
}

char* ffx_graph_basis_json(const ffx_graph* g) {
  if (!g) return nullptr;
  return dup_json(freefix::io::words_to_json(g->g.basis()));
}

char* ffx_graph_json(const ffx_graph* g) {
  if (!g) return nullptr;
  return dup_json(freefix::io::subgroup_to_json(g->g));
}

ffx_status ffx_graph_pullback_json(const ffx_graph* h, const ffx_graph* k,
                                   char** out) {
  return guarded([&] {
    require(h, "graph");
    require(k, "graph");
    require(out, "out");
    auto comps = SubgroupGraph::pullback(h->g, k->g);
    Json arr = Json::array();
    for (const auto& c : comps) {
      Json e;
      e["rank"] = c.graph.rank();
      e["generators"] = freefix::io::words_to_json(c.graph.basis());
      e["witness"] = c.witness.str();
      e["based"] = c.based;
      arr.push_back(std::move(e));
    }
    *out = dup_json(arr);
  });
}

ffx_status ffx_check_pure_json(const ffx_graph* g, int bound, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = dup_json(freefix::io::purity_to_json(g->g.purity_check(bound)));
  });
}

ffx_status ffx_check_inert_json(const ffx_graph* g, int trials,
                                int gen_len_bound, uint64_t seed, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = dup_json(freefix::io::inertia_to_json(
        g->g.inertia_sample(trials, gen_len_bound, seed)));
  });
}

ffx_status ffx_check_coset_bound_json(const ffx_graph* g, const char* h,
                                      const char* const* conjugators,
                                      size_t count, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(h, "word");
    require(out, "out");
    if (count > 0) require(conjugators, "conjugators");
    int rank = g->g.ambient_rank();
    Word hw = Word::parse(h, rank);
    auto us = parse_words(rank, conjugators, count);
    *out = dup_json(
        freefix::io::coset_bound_to_json(g->g.coset_displacement_check(hw, us)));
  });
}

/* Endomorphisms ----------------------------------------------------------- */

ffx_status ffx_endo_new(int rank, const char* const* images, size_t count,
                        ffx_endo** out) {
  return guarded([&] {
    require(out, "out");
    require(images, "images");
    auto ws = parse_words(rank, images, count);
    *out = new ffx_endo{Endomorphism(rank, std::move(ws))};
  });
}

ffx_status ffx_endo_from_json(const char* json_text, ffx_endo** out) {
  return guarded([&] {
    require(out, "out");
    *out = new ffx_endo{freefix::io::endo_from_json(parse_json(json_text))};
  });
}

void ffx_endo_free(ffx_endo* f) { delete f; }

int ffx_endo_rank(const ffx_endo* f) { return f ? f->f.rank() : 0; }

char* ffx_endo_json(const ffx_endo* f) {
  if (!f) return nullptr;
  return dup_json(freefix::io::endo_to_json(f->f));
}

ffx_status ffx_endo_apply(const ffx_endo* f, const char* word_text,
                          char** out) {
  return guarded([&] {
    require(f, "endomorphism");
    require(word_text, "word");
    require(out, "out");
    *out = dup_string(f->f.apply(Word::parse(word_text, f->f.rank())).str());
  });
}

ffx_status ffx_endo_is_automorphism(const ffx_endo* f, int* out) {
  return guarded([&] {
    require(f, "endomorphism");
    require(out, "out");
    *out = f->f.is_automorphism() ? 1 : 0;
  });
}

ffx_status ffx_endo_inverse(const ffx_endo* f, ffx_endo** out) {
  return guarded([&] {
    require(f, "endomorphism");
    require(out, "out");
    *out = new ffx_endo{f->f.inverse()};
  });
}

/* Fixed subgroups ---------------------------------------------------------- */

ffx_status ffx_fix_json(const ffx_endo* f, const ffx_budget* budget,
                        char** out) {
  return guarded([&] {
    require(f, "endomorphism");
    require(out, "out");
    auto res = freefix::fixed_subgroup(f->f, budget_of(budget));
    *out = dup_json(freefix::io::fix_result_to_json(res));
  });
}

ffx_status ffx_eigengroups_json(const ffx_endo* f, const ffx_budget* budget,
                                char** out) {
  return guarded([&] {
    require(f, "endomorphism");
    require(out, "out");
    auto recs = freefix::eigengroup_scan(f->f, budget_of(budget));
    *out = dup_json(freefix::io::eigen_records_to_json(recs));
  });
}

ffx_status ffx_isogredience_json(const ffx_endo* f, const ffx_budget* budget,
                                 char** out) {
  return guarded([&] {
    require(f, "endomorphism");
    require(out, "out");
    auto recs = freefix::eigengroup_scan(f->f, budget_of(budget));
    auto part = freefix::isogredience_partition(recs, f->f);
    Json j;
    j["eigengroups"] = freefix::io::eigen_records_to_json(recs);
    j["partition"] = freefix::io::partition_to_json(part);
    *out = dup_json(j);
  });
}

ffx_status ffx_bh_check_json(const ffx_endo* f, const ffx_budget* budget,
                             char** out) {
  return guarded([&] {
    require(f, "endomorphism");
    require(out, "out");
    auto rep = freefix::bh_report(f->f, budget_of(budget));
    *out = dup_json(freefix::io::bh_report_to_json(rep));
  });
}

/* Free factor systems -------------------------------------------------------- */

ffx_status ffx_ffs_cx_json(const char* system_json, char** out) {
  return guarded([&] {
    require(out, "out");
    auto sys = freefix::io::system_from_json(parse_json(system_json));
    Json j;
    j["complexity"] = freefix::complexity_of(sys);
    *out = dup_json(j);
  });
}

ffx_status ffx_ffs_leq_json(const char* system1_json, const char* system2_json,
                            char** out) {
  return guarded([&] {
    require(out, "out");
    auto s1 = freefix::io::system_from_json(parse_json(system1_json));
    auto s2 = freefix::io::system_from_json(parse_json(system2_json));
    Json j;
    j["leq"] = freefix::system_leq(s1, s2);
    *out = dup_json(j);
  });
}

ffx_status ffx_ffs_wedge_json(const char* system1_json,
                              const char* system2_json, char** out) {
  return guarded([&] {
    require(out, "out");
    auto s1 = freefix::io::system_from_json(parse_json(system1_json));
    auto s2 = freefix::io::system_from_json(parse_json(system2_json));
    *out = dup_json(freefix::io::system_to_json(freefix::wedge(s1, s2)));
  });
}

ffx_status ffx_ffs_invariant_json(const char* system_json, const ffx_endo* f,
                                  char** out) {
  return guarded([&] {
    require(f, "endomorphism");
    require(out, "out");
    auto sys = freefix::io::system_from_json(parse_json(system_json));
    Json j;
    j["invariant"] = freefix::invariant_check(sys, f->f);
    *out = dup_json(j);
  });
}

ffx_status ffx_ffs_is_free_factor_json(const ffx_graph* g, int depth,
                                       char** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    auto rep = freefix::free_factor_test(g->g, depth);
    *out = dup_json(freefix::io::factor_report_to_json(rep));
  });
}

ffx_status ffx_ffs_certify_json(const char* system_json, int conj_bound,
                                int depth, char** out) {
  return guarded([&] {
    require(out, "out");
    auto sys = freefix::io::system_from_json(parse_json(system_json));
    bool certified = sys.certify(conj_bound, depth);
    Json j;
    j["certified"] = certified;
    j["system"] = freefix::io::system_to_json(sys);
    *out = dup_json(j);
  });
}

/* Constructions ---------------------------------------------------------------- */

ffx_status ffx_construct_extend(const ffx_endo* f, int n,
                                const char* extra_images_json,
                                const ffx_budget* budget, ffx_endo** out) {
  return guarded([&] {
    require(f, "endomorphism");
    require(out, "out");
    std::optional<std::vector<Word>> extra;
    if (extra_images_json) {
      extra = freefix::io::words_from_json(parse_json(extra_images_json), n);
    }
    *out = new ffx_endo{
        freefix::extend_trivially(f->f, n, extra, budget_of(budget))};
  });
}

ffx_status ffx_construct_product(const ffx_endo* f1, const ffx_endo* f2,
                                 const ffx_budget* budget, ffx_endo** out) {
  return guarded([&] {
    require(f1, "endomorphism");
    require(f2, "endomorphism");
    require(out, "out");
    *out = new ffx_endo{
        freefix::free_product_auto(f1->f, f2->f, budget_of(budget))};
  });
}

ffx_status ffx_construct_stable(const ffx_endo* f, const char* h,
                                const char* h_prime, int r, ffx_endo** out) {
  return guarded([&] {
    require(f, "endomorphism");
    require(h, "word");
    require(h_prime, "word");
    require(out, "out");
    int m = f->f.rank();
    *out = new ffx_endo{freefix::stable_letter_extend(
        f->f, Word::parse(h, m), Word::parse(h_prime, m), r)};
  });
}

ffx_status ffx_construct_good_r_json(const ffx_endo* f, const char* h,
                                     const char* h_prime, int r_lo, int r_hi,
                                     const ffx_budget* budget, char** out) {
  return guarded([&] {
    require(f, "endomorphism");
    require(h, "word");
    require(h_prime, "word");
    require(out, "out");
    int m = f->f.rank();
    auto recs = freefix::find_good_r(f->f, Word::parse(h, m),
                                     Word::parse(h_prime, m), r_lo, r_hi,
                                     budget_of(budget));
    *out = dup_json(freefix::io::good_r_to_json(recs));
  });
}

/* Verifiers ----------------------------------------------------------------------- */

ffx_status ffx_verify_mainconnex_json(const ffx_endo* f, const char* case_json,
                                      const ffx_budget* budget, char** out) {
  return guarded([&] {
    require(f, "endomorphism");
    require(out, "out");
    int rank = 0;
    auto mc = freefix::io::mainconnex_from_json(parse_json(case_json), &rank);
    if (rank != f->f.rank()) {
      freefix::fail(ErrorCode::kRankMismatch, "case rank mismatch");
    }
    auto rep = freefix::verify_mainconnex(f->f, mc, budget_of(budget));
    *out = dup_json(freefix::io::verify_report_to_json(rep));
  });
}

ffx_status ffx_verify_cormain_json(const ffx_endo* f, const char* cert_json,
                                   const ffx_budget* budget, char** out) {
  return guarded([&] {
    require(f, "endomorphism");
    require(out, "out");
    auto cert = freefix::io::certificate_from_json(parse_json(cert_json));
    auto rep = freefix::verify_cormain(f->f, cert, budget_of(budget));
    *out = dup_json(freefix::io::verify_report_to_json(rep));
  });
}

ffx_status ffx_verify_collins_turner_json(const ffx_endo* f,
                                          const char* data_json,
                                          const ffx_budget* budget,
                                          char** out) {
  return guarded([&] {
    require(f, "endomorphism");
    require(out, "out");
    Json j = parse_json(data_json);
    int rank = f->f.rank();
    if (!j.is_object() || !j.contains("h_generators")) {
      freefix::fail(ErrorCode::kInput, "missing field \"h_generators\"");
    }
    auto h_gens = freefix::io::words_from_json(j.at("h_generators"), rank);
    if (!j.contains("y") || !j.at("y").is_string()) {
      freefix::fail(ErrorCode::kInput, "missing field \"y\"");
    }
    Word y = Word::parse(j.at("y").get<std::string>(), rank);
    std::optional<std::pair<Word, int>> hr;
    if (j.contains("h") != j.contains("r")) {
      freefix::fail(ErrorCode::kInput, "h and r must come together");
    }
    if (j.contains("h")) {
      hr = std::make_pair(Word::parse(j.at("h").get<std::string>(), rank),
                          j.at("r").get<int>());
    }
    auto rep = freefix::collins_turner_check(f->f, h_gens, y, hr,
                                             budget_of(budget));
    *out = dup_json(freefix::io::verify_report_to_json(rep));
  });
}

ffx_status ffx_verify_imagey_json(const ffx_endo* f, const ffx_graph* h_graph,
                                  const char* y, const char* h, char** out) {
  return guarded([&] {
    require(f, "endomorphism");
    require(h_graph, "graph");
    require(y, "word");
    require(h, "word");
    require(out, "out");
    int rank = f->f.rank();
    auto rep = freefix::imagey_solve(f->f, h_graph->g, Word::parse(y, rank),
                                     Word::parse(h, rank));
    *out = dup_json(freefix::io::imagey_report_to_json(rep));
  });
}

}  // extern "C"
