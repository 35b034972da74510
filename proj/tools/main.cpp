// freefix command line: thin shell over the C API. Every command builds one
// JSON report object; --json prints it verbatim, the default prints an
// indented key/value rendering of the same object.
//
// Exit codes: 0 success, 1 property or verification failure, 2 usage/input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "freefix/capi.h"

namespace {

using Json = nlohmann::ordered_json;

struct EndoDeleter {
  void operator()(ffx_endo* f) const { ffx_endo_free(f); }
};
struct GraphDeleter {
  void operator()(ffx_graph* g) const { ffx_graph_free(g); }
};
using EndoPtr = std::unique_ptr<ffx_endo, EndoDeleter>;
using GraphPtr = std::unique_ptr<ffx_graph, GraphDeleter>;

[[noreturn]] void die(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::exit(2);
}

void check(ffx_status st) {
  if (st != FFX_OK) die(ffx_last_error());
}

std::string take_string(char* s) {
  if (!s) die("null string from library");
  std::string out = s;
  ffx_string_free(s);
  return out;
}

Json take_json(char* s) { return Json::parse(take_string(s)); }

Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) die("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    die(path + ": " + e.what());
  }
  return j;
}

// Endomorphism files are either bare {"rank","images"} or corpus entries
// holding one under "endomorphism".
Json endo_json_of(const Json& j, const std::string& path) {
  if (j.contains("images")) return j;
  if (j.contains("endomorphism")) return j.at("endomorphism");
  die(path + ": no endomorphism found");
}

Json subgroup_json_of(const Json& j, const std::string& path) {
  if (j.contains("generators")) return j;
  if (j.contains("subgroup")) return j.at("subgroup");
  die(path + ": no subgroup found");
}

EndoPtr load_endo(const std::string& path) {
  Json j = endo_json_of(load_file(path), path);
  ffx_endo* f = nullptr;
  check(ffx_endo_from_json(j.dump().c_str(), &f));
  return EndoPtr(f);
}

GraphPtr load_graph(const std::string& path) {
  Json j = subgroup_json_of(load_file(path), path);
  ffx_graph* g = nullptr;
  check(ffx_graph_from_json(j.dump().c_str(), &g));
  return GraphPtr(g);
}

// Budget flags; unset fields fall back to the file's embedded budget (when
// the input is a corpus entry), then to library defaults.
struct BudgetFlags {
  int max_len = 8;
  int disp_cap = 0;
  int eig_len = 2;
  CLI::Option* max_len_opt = nullptr;
  CLI::Option* disp_cap_opt = nullptr;
  CLI::Option* eig_len_opt = nullptr;

  void attach(CLI::App* app) {
    max_len_opt = app->add_option("--max-len", max_len,
                                  "fixed word enumeration length bound");
    disp_cap_opt = app->add_option(
        "--disp-cap", disp_cap, "displacement cap (0 = lossless default)");
    eig_len_opt =
        app->add_option("--eig-len", eig_len, "eigenvalue length bound");
  }

  ffx_budget resolve(const Json& entry) const {
    ffx_budget b{max_len, disp_cap, eig_len};
    if (entry.is_object() && entry.contains("budget")) {
      const Json& e = entry.at("budget");
      if (!max_len_opt->count() && e.contains("max_len")) {
        b.max_len = e.at("max_len").get<int>();
      }
      if (!disp_cap_opt->count() && e.contains("displacement_cap")) {
        b.displacement_cap = e.at("displacement_cap").get<int>();
      }
      if (!eig_len_opt->count() && e.contains("eigenvalue_len")) {
        b.eigenvalue_len = e.at("eigenvalue_len").get<int>();
      }
    }
    return b;
  }
};

void render(const Json& j, int indent, std::ostream& os);

bool scalar_array(const Json& j) {
  for (const Json& e : j) {
    if (e.is_object() || e.is_array()) return false;
  }
  return true;
}

void render_value(const Json& j, std::ostream& os) {
  if (j.is_string()) {
    os << j.get<std::string>();
  } else {
    os << j.dump();
  }
}

void render(const Json& j, int indent, std::ostream& os) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const Json& v = it.value();
      if (v.is_object() || (v.is_array() && !scalar_array(v))) {
        os << pad << it.key() << ":\n";
        render(v, indent + 2, os);
      } else {
        os << pad << it.key() << ": ";
        render_value(v, os);
        os << "\n";
      }
    }
  } else if (j.is_array()) {
    int i = 0;
    for (const Json& e : j) {
      os << pad << "- [" << i++ << "]\n";
      render(e, indent + 2, os);
    }
  } else {
    os << pad;
    render_value(j, os);
    os << "\n";
  }
}

int g_exit = 0;
bool g_json = false;

void emit(const Json& j) {
  if (g_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    render(j, 0, std::cout);
  }
}

void emit_verify_report(const Json& rep) {
  emit(rep);
  if (!rep.at("pass").get<bool>()) g_exit = 1;
}

// ---- corpus runner ----------------------------------------------------

struct CorpusState {
  int checks = 0;
  Json failures = Json::array();

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

std::string dir_of(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

ffx_budget entry_budget(const Json& entry) {
  ffx_budget b{8, 0, 2};
  if (entry.contains("budget")) {
    const Json& e = entry.at("budget");
    if (e.contains("max_len")) b.max_len = e.at("max_len").get<int>();
    if (e.contains("displacement_cap")) {
      b.displacement_cap = e.at("displacement_cap").get<int>();
    }
    if (e.contains("eigenvalue_len")) {
      b.eigenvalue_len = e.at("eigenvalue_len").get<int>();
    }
  }
  return b;
}

GraphPtr fold_words(int rank, const std::vector<std::string>& gens) {
  std::vector<const char*> ptrs;
  ptrs.reserve(gens.size());
  for (const auto& g : gens) ptrs.push_back(g.c_str());
  ffx_graph* g = nullptr;
  check(ffx_graph_fold(rank, ptrs.data(), ptrs.size(), &g));
  return GraphPtr(g);
}

GraphPtr fold_json_words(int rank, const Json& arr) {
  std::vector<std::string> gens;
  for (const Json& e : arr) gens.push_back(e.get<std::string>());
  return fold_words(rank, gens);
}

std::string reduce_word(int rank, const std::string& text) {
  ffx_word* w = nullptr;
  check(ffx_word_parse(rank, text.c_str(), &w));
  std::string out = take_string(ffx_word_str(w));
  ffx_word_free(w);
  return out;
}

void run_endo_entry(const Json& entry, const std::string& dir,
                    const std::string& name, CorpusState& st) {
  Json ej = entry.at("endomorphism");
  ffx_endo* raw = nullptr;
  check(ffx_endo_from_json(ej.dump().c_str(), &raw));
  EndoPtr f(raw);
  int rank = ffx_endo_rank(f.get());
  ffx_budget budget = entry_budget(entry);

  if (entry.contains("expected_fix")) {
    const Json& exp = entry.at("expected_fix");
    char* out = nullptr;
    check(ffx_fix_json(f.get(), &budget, &out));
    Json fix = take_json(out);
    st.expect(fix.at("rank").get<int>() == exp.at("rank").get<int>(),
              name + ": fix rank");
    if (exp.contains("verdict")) {
      st.expect(fix.at("verdict") == exp.at("verdict"), name + ": fix verdict");
    }
    auto computed = fold_json_words(rank, fix.at("generators"));
    auto wanted = fold_json_words(rank, exp.at("generators"));
    st.expect(take_string(ffx_graph_json(computed.get())) ==
                  take_string(ffx_graph_json(wanted.get())),
              name + ": fix generators");
  }

  if (entry.contains("certificates")) {
    for (const Json& c : entry.at("certificates")) {
      std::string file = c.at("file").get<std::string>();
      Json cert = load_file(dir + "/" + file);
      char* out = nullptr;
      check(ffx_verify_cormain_json(f.get(), cert.dump().c_str(), &budget,
                                    &out));
      Json rep = take_json(out);
      bool want = c.value("expect", "pass") == std::string("pass");
      st.expect(rep.at("pass").get<bool>() == want, name + ": " + file);
    }
  }

  if (entry.contains("cases")) {
    for (const Json& c : entry.at("cases")) {
      std::string file = c.at("file").get<std::string>();
      Json mc = load_file(dir + "/" + file);
      char* out = nullptr;
      check(ffx_verify_mainconnex_json(f.get(), mc.dump().c_str(), &budget,
                                       &out));
      Json rep = take_json(out);
      bool want = c.value("expect", "pass") == std::string("pass");
      st.expect(rep.at("pass").get<bool>() == want &&
                    !rep.at("vacuous").get<bool>(),
                name + ": " + file);
    }
  }

  if (entry.contains("collins_turner")) {
    for (const Json& c : entry.at("collins_turner")) {
      char* out = nullptr;
      check(ffx_verify_collins_turner_json(f.get(), c.at("data").dump().c_str(),
                                           &budget, &out));
      Json rep = take_json(out);
      bool want = c.value("expect", "pass") == std::string("pass");
      st.expect(rep.at("pass").get<bool>() == want, name + ": collins-turner");
    }
  }

  if (entry.contains("imagey")) {
    for (const Json& c : entry.at("imagey")) {
      auto sub = fold_json_words(rank, c.at("subgroup"));
      char* out = nullptr;
      check(ffx_verify_imagey_json(f.get(), sub.get(),
                                   c.at("y").get<std::string>().c_str(),
                                   c.at("h").get<std::string>().c_str(), &out));
      Json rep = take_json(out);
      st.expect(rep.at("fixed").get<bool>() == c.at("expect_fixed").get<bool>(),
                name + ": imagey fixed flag");
      if (c.contains("expect_h_prime")) {
        std::string want = reduce_word(rank, c.at("expect_h_prime"));
        st.expect(rep.contains("h_prime") && rep.at("h_prime") == want,
                  name + ": imagey h'");
      }
      if (c.contains("expect_conjugator_exists")) {
        st.expect(rep.at("conjugator_exists").get<bool>() ==
                      c.at("expect_conjugator_exists").get<bool>(),
                  name + ": imagey conjugator existence");
      }
    }
  }

  // Negative assertion: the certificate passes while some h_j moves.
  if (entry.contains("assert_cert_h_not_fixed")) {
    for (const Json& c : entry.at("assert_cert_h_not_fixed")) {
      Json cert = load_file(dir + "/" + c.at("file").get<std::string>());
      int index = c.at("index").get<int>();
      std::string h = cert.at("h_elements").at(index).get<std::string>();
      char* img = nullptr;
      check(ffx_endo_apply(f.get(), h.c_str(), &img));
      st.expect(take_string(img) != reduce_word(rank, h),
                name + ": h element unexpectedly fixed");
    }
  }
}

void run_refutation_entry(const Json& entry, const std::string& name,
                          CorpusState& st) {
  int rank = entry.at("rank").get<int>();
  auto sub = fold_json_words(rank, entry.at("subgroup_generators"));
  st.expect(ffx_graph_rank(sub.get()) ==
                static_cast<int>(entry.at("subgroup_generators").size()),
            name + ": subgroup rank");

  // Family a -> a, b -> a^r b, c -> c: the subgroup contains c^-1 b c, so a
  // fixing automorphism would need h' in <a,b> with h' b h'^-1 = a^r b.
  for (const Json& rv : entry.at("family").at("r_values")) {
    int r = rv.get<int>();
    std::string img_b(static_cast<size_t>(r), 'a');
    img_b += "b";
    std::vector<std::string> images = {"a", img_b, "c"};
    std::vector<const char*> ptrs;
    for (const auto& s : images) ptrs.push_back(s.c_str());
    ffx_endo* raw = nullptr;
    check(ffx_endo_new(rank, ptrs.data(), ptrs.size(), &raw));
    EndoPtr f(raw);
    auto h_sub = fold_words(rank, {"a", "b"});
    char* out = nullptr;
    check(ffx_verify_imagey_json(f.get(), h_sub.get(), "c", "b", &out));
    Json rep = take_json(out);
    st.expect(!rep.at("fixed").get<bool>() &&
                  !rep.at("conjugator_exists").get<bool>(),
              name + ": refutation for r=" + std::to_string(r));
  }

  if (entry.contains("free_factor_checks")) {
    for (const Json& c : entry.at("free_factor_checks")) {
      auto g = fold_json_words(c.at("rank").get<int>(), c.at("generators"));
      char* out = nullptr;
      check(ffx_ffs_is_free_factor_json(g.get(), c.at("depth").get<int>(),
                                        &out));
      Json rep = take_json(out);
      st.expect(rep.at("verdict") == c.at("expect"),
                name + ": free factor verdict");
    }
  }
}

int run_corpus(const std::string& manifest_path) {
  Json manifest = load_file(manifest_path);
  std::string dir = dir_of(manifest_path);
  CorpusState st;
  Json entries = Json::array();
  for (const Json& e : manifest.at("entries")) {
    std::string file = e.get<std::string>();
    Json entry = load_file(dir + "/" + file);
    std::string name = entry.value("name", file);
    size_t before = st.failures.size();
    if (entry.value("type", "endomorphism") == std::string("refutation")) {
      run_refutation_entry(entry, name, st);
    } else {
      run_endo_entry(entry, dir, name, st);
    }
    Json line;
    line["name"] = name;
    line["ok"] = st.failures.size() == before;
    entries.push_back(std::move(line));
  }
  Json rep;
  rep["entries"] = std::move(entries);
  rep["checks"] = st.checks;
  rep["failures"] = st.failures;
  rep["pass"] = st.failures.empty();
  emit(rep);
  return st.failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixed subgroups and eigengroups of free group automorphisms"};
  app.require_subcommand(1);
  app.add_flag("--json", g_json, "print raw JSON reports");
  app.set_help_all_flag("--help-all");

  int rank = 0;
  std::string word_arg, path1, path2, h_arg, hp_arg, y_arg;
  std::vector<std::string> words;
  int depth = 6, bound = 6, trials = 200, gen_len = 5;
  int r_val = 0, r_lo = -5, r_hi = 5, to_rank = 0, conj_bound = 3;
  std::uint64_t seed = 1;
  std::string extra_images;

  // reduce ---------------------------------------------------------------
  auto* c_reduce = app.add_subcommand("reduce", "reduce a word");
  c_reduce->add_option("--rank", rank, "ambient rank")->required();
  c_reduce->add_option("word", word_arg, "word text")->required();
  c_reduce->callback([&] {
    Json j;
    j["rank"] = rank;
    j["word"] = reduce_word(rank, word_arg);
    emit(j);
  });

  // fold -----------------------------------------------------------------
  auto* c_fold = app.add_subcommand("fold", "fold generators into a graph");
  c_fold->add_option("--rank", rank)->required();
  c_fold->add_option("generators", words, "generator words");
  c_fold->callback([&] {
    auto g = fold_words(rank, words);
    Json j = take_json(ffx_graph_json(g.get()));
    j["subgroup_rank"] = ffx_graph_rank(g.get());
    emit(j);
  });

  // member ---------------------------------------------------------------
  auto* c_member = app.add_subcommand("member", "membership in a subgroup");
  c_member->add_option("subgroup", path1, "subgroup JSON file")->required();
  c_member->add_option("word", word_arg)->required();
  c_member->callback([&] {
    auto g = load_graph(path1);
    int is_in = 0;
    check(ffx_graph_member(g.get(), word_arg.c_str(), &is_in));
    Json j;
    j["member"] = is_in != 0;
    emit(j);
    if (!is_in) g_exit = 1;
  });

  // intersect --------------------------------------------------------------
  auto* c_intersect =
      app.add_subcommand("intersect", "pullback components of two subgroups");
  c_intersect->add_option("subgroup1", path1)->required();
  c_intersect->add_option("subgroup2", path2)->required();
  c_intersect->callback([&] {
    auto g1 = load_graph(path1);
    auto g2 = load_graph(path2);
    char* out = nullptr;
    check(ffx_graph_pullback_json(g1.get(), g2.get(), &out));
    Json j;
    j["components"] = take_json(out);
    emit(j);
  });

  // apply ------------------------------------------------------------------
  auto* c_apply = app.add_subcommand("apply", "apply an endomorphism");
  c_apply->add_option("endo", path1)->required();
  c_apply->add_option("word", word_arg)->required();
  c_apply->callback([&] {
    auto f = load_endo(path1);
    char* out = nullptr;
    check(ffx_endo_apply(f.get(), word_arg.c_str(), &out));
    Json j;
    j["image"] = take_string(out);
    emit(j);
  });

  // invert-auto ---------------------------------------------------------------
  auto* c_invert = app.add_subcommand("invert-auto", "invert an automorphism");
  c_invert->add_option("endo", path1)->required();
  c_invert->callback([&] {
    auto f = load_endo(path1);
    ffx_endo* inv = nullptr;
    check(ffx_endo_inverse(f.get(), &inv));
    EndoPtr holder(inv);
    emit(take_json(ffx_endo_json(inv)));
  });

  // fix --------------------------------------------------------------------
  BudgetFlags fix_budget;
  auto* c_fix = app.add_subcommand("fix", "fixed subgroup at budget");
  c_fix->add_option("endo", path1)->required();
  fix_budget.attach(c_fix);
  c_fix->callback([&] {
    Json file = load_file(path1);
    auto f = load_endo(path1);
    ffx_budget b = fix_budget.resolve(file);
    char* out = nullptr;
    check(ffx_fix_json(f.get(), &b, &out));
    emit(take_json(out));
  });

  // eigengroups ---------------------------------------------------------------
  BudgetFlags eig_budget;
  auto* c_eigen = app.add_subcommand("eigengroups", "eigengroup scan");
  c_eigen->add_option("endo", path1)->required();
  eig_budget.attach(c_eigen);
  c_eigen->callback([&] {
    Json file = load_file(path1);
    auto f = load_endo(path1);
    ffx_budget b = eig_budget.resolve(file);
    char* out = nullptr;
    check(ffx_eigengroups_json(f.get(), &b, &out));
    Json j;
    j["eigengroups"] = take_json(out);
    emit(j);
  });

  // isogredience ----------------------------------------------------------------
  BudgetFlags iso_budget;
  auto* c_iso =
      app.add_subcommand("isogredience", "isogredience classes of eigengroups");
  c_iso->add_option("endo", path1)->required();
  iso_budget.attach(c_iso);
  c_iso->callback([&] {
    Json file = load_file(path1);
    auto f = load_endo(path1);
    ffx_budget b = iso_budget.resolve(file);
    char* out = nullptr;
    check(ffx_isogredience_json(f.get(), &b, &out));
    emit(take_json(out));
  });

  // bh-check ------------------------------------------------------------------
  BudgetFlags bh_budget;
  auto* c_bh = app.add_subcommand("bh-check", "rank bound report");
  c_bh->add_option("endo", path1)->required();
  bh_budget.attach(c_bh);
  c_bh->callback([&] {
    Json file = load_file(path1);
    auto f = load_endo(path1);
    ffx_budget b = bh_budget.resolve(file);
    char* out = nullptr;
    check(ffx_bh_check_json(f.get(), &b, &out));
    Json rep = take_json(out);
    emit(rep);
    if (!rep.at("bound_ok").get<bool>()) g_exit = 1;
  });

  // check ----------------------------------------------------------------------
  auto* c_check = app.add_subcommand("check", "subgroup property checks");
  c_check->require_subcommand(1);

  auto* c_pure = c_check->add_subcommand("pure", "purity up to a bound");
  c_pure->add_option("subgroup", path1)->required();
  c_pure->add_option("--bound", bound, "witness length bound");
  c_pure->callback([&] {
    auto g = load_graph(path1);
    char* out = nullptr;
    check(ffx_check_pure_json(g.get(), bound, &out));
    Json rep = take_json(out);
    emit(rep);
    if (!rep.at("pure_up_to_bound").get<bool>()) g_exit = 1;
  });

  auto* c_inert = c_check->add_subcommand("inert", "sampled inertia check");
  c_inert->add_option("subgroup", path1)->required();
  c_inert->add_option("--trials", trials);
  c_inert->add_option("--gen-len", gen_len);
  c_inert->add_option("--seed", seed);
  c_inert->callback([&] {
    auto g = load_graph(path1);
    char* out = nullptr;
    check(ffx_check_inert_json(g.get(), trials, gen_len, seed, &out));
    Json rep = take_json(out);
    emit(rep);
    if (!rep.at("violations").empty()) g_exit = 1;
  });

  auto* c_coset =
      c_check->add_subcommand("coset-bound", "coset displacement bound");
  c_coset->add_option("subgroup", path1)->required();
  c_coset->add_option("--h-word", h_arg, "the element h")->required();
  c_coset->add_option("--u", words, "conjugators with h^u in H")->required();
  c_coset->callback([&] {
    auto g = load_graph(path1);
    std::vector<const char*> ptrs;
    for (const auto& s : words) ptrs.push_back(s.c_str());
    char* out = nullptr;
    check(ffx_check_coset_bound_json(g.get(), h_arg.c_str(), ptrs.data(),
                                     ptrs.size(), &out));
    Json rep = take_json(out);
    emit(rep);
    if (!rep.at("ok").get<bool>()) g_exit = 1;
  });

  // ffs --------------------------------------------------------------------------
  auto* c_ffs = app.add_subcommand("ffs", "free factor systems");
  c_ffs->require_subcommand(1);

  auto* c_cx = c_ffs->add_subcommand("cx", "complexity vector");
  c_cx->add_option("system", path1)->required();
  c_cx->callback([&] {
    char* out = nullptr;
    check(ffx_ffs_cx_json(load_file(path1).dump().c_str(), &out));
    emit(take_json(out));
  });

  auto* c_leq = c_ffs->add_subcommand("leq", "partial order test");
  c_leq->add_option("system1", path1)->required();
  c_leq->add_option("system2", path2)->required();
  c_leq->callback([&] {
    char* out = nullptr;
    check(ffx_ffs_leq_json(load_file(path1).dump().c_str(),
                           load_file(path2).dump().c_str(), &out));
    Json rep = take_json(out);
    emit(rep);
    if (!rep.at("leq").get<bool>()) g_exit = 1;
  });

  auto* c_wedge = c_ffs->add_subcommand("wedge", "meet of two systems");
  c_wedge->add_option("system1", path1)->required();
  c_wedge->add_option("system2", path2)->required();
  c_wedge->callback([&] {
    char* out = nullptr;
    check(ffx_ffs_wedge_json(load_file(path1).dump().c_str(),
                             load_file(path2).dump().c_str(), &out));
    emit(take_json(out));
  });

  auto* c_inv = c_ffs->add_subcommand("invariant", "invariance under a map");
  c_inv->add_option("system", path1)->required();
  c_inv->add_option("endo", path2)->required();
  c_inv->callback([&] {
    auto f = load_endo(path2);
    char* out = nullptr;
    check(ffx_ffs_invariant_json(load_file(path1).dump().c_str(), f.get(),
                                 &out));
    Json rep = take_json(out);
    emit(rep);
    if (!rep.at("invariant").get<bool>()) g_exit = 1;
  });

  auto* c_isff =
      c_ffs->add_subcommand("is-free-factor", "Whitehead descent test");
  c_isff->add_option("subgroup", path1)->required();
  c_isff->add_option("--depth", depth, "move budget");
  c_isff->callback([&] {
    auto g = load_graph(path1);
    char* out = nullptr;
    check(ffx_ffs_is_free_factor_json(g.get(), depth, &out));
    Json rep = take_json(out);
    emit(rep);
    if (rep.at("verdict") != "yes") g_exit = 1;
  });

  auto* c_certify = c_ffs->add_subcommand("certify", "certify a system");
  c_certify->add_option("system", path1)->required();
  c_certify->add_option("--conj-bound", conj_bound);
  c_certify->add_option("--depth", depth);
  c_certify->callback([&] {
    char* out = nullptr;
    check(ffx_ffs_certify_json(load_file(path1).dump().c_str(), conj_bound,
                               depth, &out));
    Json rep = take_json(out);
    emit(rep);
    if (!rep.at("certified").get<bool>()) g_exit = 1;
  });

  // construct -----------------------------------------------------------------------
  auto* c_con = app.add_subcommand("construct", "automorphism constructions");
  c_con->require_subcommand(1);

  BudgetFlags ext_budget;
  auto* c_ext = c_con->add_subcommand("extend", "trivial extension");
  c_ext->add_option("endo", path1)->required();
  c_ext->add_option("--to-rank", to_rank)->required();
  c_ext->add_option("--images", extra_images,
                    "JSON array of images for the added letters");
  ext_budget.attach(c_ext);
  c_ext->callback([&] {
    Json file = load_file(path1);
    auto f = load_endo(path1);
    ffx_budget b = ext_budget.resolve(file);
    ffx_endo* out = nullptr;
    check(ffx_construct_extend(
        f.get(), to_rank, extra_images.empty() ? nullptr : extra_images.c_str(),
        &b, &out));
    EndoPtr holder(out);
    emit(take_json(ffx_endo_json(out)));
  });

  BudgetFlags prod_budget;
  auto* c_prod = c_con->add_subcommand("product", "free product of two maps");
  c_prod->add_option("endo1", path1)->required();
  c_prod->add_option("endo2", path2)->required();
  prod_budget.attach(c_prod);
  c_prod->callback([&] {
    auto f1 = load_endo(path1);
    auto f2 = load_endo(path2);
    ffx_budget b = prod_budget.resolve(Json::object());
    ffx_endo* out = nullptr;
    check(ffx_construct_product(f1.get(), f2.get(), &b, &out));
    EndoPtr holder(out);
    emit(take_json(ffx_endo_json(out)));
  });

  auto* c_stab = c_con->add_subcommand("stable", "stable letter extension");
  c_stab->add_option("endo", path1)->required();
  c_stab->add_option("--h-word", h_arg)->required();
  c_stab->add_option("--h-prime", hp_arg)->required();
  c_stab->add_option("--r", r_val)->required();
  c_stab->callback([&] {
    auto f = load_endo(path1);
    ffx_endo* out = nullptr;
    check(ffx_construct_stable(f.get(), h_arg.c_str(), hp_arg.c_str(), r_val,
                               &out));
    EndoPtr holder(out);
    emit(take_json(ffx_endo_json(out)));
  });

  BudgetFlags goodr_budget;
  auto* c_goodr = c_con->add_subcommand("good-r", "scan stable exponents");
  c_goodr->add_option("endo", path1)->required();
  c_goodr->add_option("--h-word", h_arg)->required();
  c_goodr->add_option("--h-prime", hp_arg)->required();
  c_goodr->add_option("--r-lo", r_lo);
  c_goodr->add_option("--r-hi", r_hi);
  goodr_budget.attach(c_goodr);
  c_goodr->callback([&] {
    Json file = load_file(path1);
    auto f = load_endo(path1);
    ffx_budget b = goodr_budget.resolve(file);
    char* out = nullptr;
    check(ffx_construct_good_r_json(f.get(), h_arg.c_str(), hp_arg.c_str(),
                                    r_lo, r_hi, &b, &out));
    Json j;
    j["records"] = take_json(out);
    emit(j);
  });

  // verify ------------------------------------------------------------------------
  auto* c_ver = app.add_subcommand("verify", "theorem clause verifiers");
  c_ver->require_subcommand(1);

  BudgetFlags mc_budget;
  auto* c_mc = c_ver->add_subcommand("mainconnex", "case verifier");
  c_mc->add_option("endo", path1)->required();
  c_mc->add_option("case", path2, "case JSON file")->required();
  mc_budget.attach(c_mc);
  c_mc->callback([&] {
    Json file = load_file(path1);
    auto f = load_endo(path1);
    ffx_budget b = mc_budget.resolve(file);
    char* out = nullptr;
    check(ffx_verify_mainconnex_json(f.get(), load_file(path2).dump().c_str(),
                                     &b, &out));
    emit_verify_report(take_json(out));
  });

  BudgetFlags cm_budget;
  auto* c_cm = c_ver->add_subcommand("cormain", "certificate verifier");
  c_cm->add_option("endo", path1)->required();
  c_cm->add_option("certificate", path2)->required();
  cm_budget.attach(c_cm);
  c_cm->callback([&] {
    Json file = load_file(path1);
    auto f = load_endo(path1);
    ffx_budget b = cm_budget.resolve(file);
    char* out = nullptr;
    check(ffx_verify_cormain_json(f.get(), load_file(path2).dump().c_str(), &b,
                                  &out));
    emit_verify_report(take_json(out));
  });

  BudgetFlags ct_budget;
  auto* c_ct = c_ver->add_subcommand("collins-turner", "maximal rank verifier");
  c_ct->add_option("endo", path1)->required();
  c_ct->add_option("data", path2, "H/y/(h,r) JSON file")->required();
  ct_budget.attach(c_ct);
  c_ct->callback([&] {
    Json file = load_file(path1);
    auto f = load_endo(path1);
    ffx_budget b = ct_budget.resolve(file);
    char* out = nullptr;
    check(ffx_verify_collins_turner_json(
        f.get(), load_file(path2).dump().c_str(), &b, &out));
    emit_verify_report(take_json(out));
  });

  auto* c_iy = c_ver->add_subcommand("imagey", "stable letter image lemma");
  c_iy->add_option("endo", path1)->required();
  c_iy->add_option("--sub", path2, "subgroup JSON file")->required();
  c_iy->add_option("--y", y_arg)->required();
  c_iy->add_option("--h-word", h_arg)->required();
  c_iy->callback([&] {
    auto f = load_endo(path1);
    auto g = load_graph(path2);
    char* out = nullptr;
    check(ffx_verify_imagey_json(f.get(), g.get(), y_arg.c_str(),
                                 h_arg.c_str(), &out));
    emit(take_json(out));
  });

  // corpus ------------------------------------------------------------------------
  auto* c_corpus = app.add_subcommand("corpus", "bundled example corpus");
  c_corpus->require_subcommand(1);
  auto* c_run = c_corpus->add_subcommand("run", "re-verify every artifact");
  std::string manifest = "corpus/corpus.json";
  c_run->add_option("manifest", manifest, "manifest path");
  c_run->callback([&] { g_exit = run_corpus(manifest); });

  std::function<void(CLI::App*)> allow_global_flags = [&](CLI::App* a) {
    for (auto* sc : a->get_subcommands([](const CLI::App*) { return true; })) {
      sc->fallthrough();
      allow_global_flags(sc);
    }
  };
  allow_global_flags(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return g_exit;
}
