#include "freefix/json_io.hpp"

#include <fstream>

#include "freefix/error.hpp"

namespace freefix::io {

namespace {

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    fail(ErrorCode::kInput, std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

int need_int(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_number_integer()) {
    fail(ErrorCode::kInput, std::string("field \"") + key + "\" must be an integer");
  }
  return v.get<int>();
}

std::string need_string(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_string()) {
    fail(ErrorCode::kInput, std::string("field \"") + key + "\" must be a string");
  }
  return v.get<std::string>();
}

const char* verdict_name(Verdict v) {
  return v == Verdict::kBoundedComplete ? "bounded-complete" : "open";
}

}  // namespace

Json word_to_json(const Word& w) { return w.str(); }

Word word_from_json(const Json& j, int rank) {
  if (!j.is_string()) fail(ErrorCode::kInput, "word must be a JSON string");
  return Word::parse(j.get<std::string>(), rank);
}

Json words_to_json(const std::vector<Word>& ws) {
  Json out = Json::array();
  for (const Word& w : ws) out.push_back(word_to_json(w));
  return out;
}

std::vector<Word> words_from_json(const Json& j, int rank) {
  if (!j.is_array()) fail(ErrorCode::kInput, "expected an array of words");
  std::vector<Word> out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(word_from_json(e, rank));
  return out;
}

Json subgroup_to_json(const SubgroupGraph& g) {
  Json out;
  out["rank"] = g.ambient_rank();
  out["generators"] = words_to_json(g.basis());
  return out;
}

SubgroupGraph subgroup_from_json(const Json& j) {
  int rank = need_int(j, "rank");
  auto gens = words_from_json(need(j, "generators"), rank);
  return SubgroupGraph::fold(gens, rank);
}

Json endo_to_json(const Endomorphism& f) {
  Json out;
  out["rank"] = f.rank();
  out["images"] = words_to_json(f.images());
  return out;
}

Endomorphism endo_from_json(const Json& j) {
  int rank = need_int(j, "rank");
  auto images = words_from_json(need(j, "images"), rank);
  return Endomorphism(rank, std::move(images));
}

Json budget_to_json(const FixedSearchBudget& b) {
  Json out;
  out["max_len"] = b.max_len;
  out["displacement_cap"] = b.displacement_cap;
  out["eigenvalue_len"] = b.eigenvalue_len;
  return out;
}

FixedSearchBudget budget_from_json(const Json& j) {
  FixedSearchBudget b;
  if (!j.is_object()) fail(ErrorCode::kInput, "budget must be an object");
  if (j.contains("max_len")) b.max_len = j.at("max_len").get<int>();
  if (j.contains("displacement_cap")) {
    b.displacement_cap = j.at("displacement_cap").get<int>();
  }
  if (j.contains("eigenvalue_len")) {
    b.eigenvalue_len = j.at("eigenvalue_len").get<int>();
  }
  return b;
}

Json fix_result_to_json(const FixResult& r) {
  Json out;
  out["rank"] = r.graph.rank();
  out["generators"] = words_to_json(r.graph.basis());
  out["verdict"] = verdict_name(r.verdict);
  out["last_growth"] = r.last_growth;
  out["max_len"] = r.max_len;
  out["displacement_cap"] = r.displacement_cap;
  return out;
}

Json eigen_records_to_json(const std::vector<EigengroupRecord>& recs) {
  Json out = Json::array();
  for (const auto& rec : recs) {
    Json e;
    e["eigenvalue"] = word_to_json(rec.eigenvalue);
    e["rank"] = rec.graph.rank();
    e["generators"] = words_to_json(rec.graph.basis());
    e["verdict"] = verdict_name(rec.verdict);
    out.push_back(std::move(e));
  }
  return out;
}

Json partition_to_json(const IsogrediencePartition& part) {
  Json out;
  out["classes"] = part.classes;
  out["cyclic"] = part.cyclic;
  Json ws = Json::array();
  for (const auto& w : part.witnesses) {
    Json e;
    e["from"] = w.from;
    e["to"] = w.to;
    e["conjugator"] = word_to_json(w.conjugator);
    e["relation"] = word_to_json(w.relation);
    e["verified"] = w.verified;
    ws.push_back(std::move(e));
  }
  out["witnesses"] = std::move(ws);
  return out;
}

Json bh_report_to_json(const BhReport& rep) {
  Json out;
  out["rank"] = rep.rank;
  out["eigengroups"] = eigen_records_to_json(rep.records);
  out["partition"] = partition_to_json(rep.partition);
  out["sum_reduced_rank"] = rep.sum_reduced_rank;
  out["class_count"] = rep.class_count;
  out["bound_ok"] = rep.bound_ok;
  out["all_complete"] = rep.all_complete;
  out["budget"] = budget_to_json(rep.budget);
  return out;
}

Json certificate_to_json(const DecompositionCertificate& c) {
  Json out;
  out["rank"] = c.rank;
  Json ks = Json::array();
  for (const auto& gens : c.k_factors) ks.push_back(words_to_json(gens));
  out["k_factors"] = std::move(ks);
  out["y_letters"] = words_to_json(c.y_letters);
  out["l_generators"] = words_to_json(c.l_generators);
  out["w_elements"] = words_to_json(c.w_elements);
  out["h_elements"] = words_to_json(c.h_elements);
  out["h_prime_elements"] = words_to_json(c.h_prime_elements);
  return out;
}

DecompositionCertificate certificate_from_json(const Json& j) {
  DecompositionCertificate c;
  c.rank = need_int(j, "rank");
  const Json& ks = need(j, "k_factors");
  if (!ks.is_array()) fail(ErrorCode::kInput, "k_factors must be an array");
  for (const Json& e : ks) c.k_factors.push_back(words_from_json(e, c.rank));
  c.y_letters = words_from_json(need(j, "y_letters"), c.rank);
  c.l_generators = words_from_json(need(j, "l_generators"), c.rank);
  c.w_elements = words_from_json(need(j, "w_elements"), c.rank);
  c.h_elements = words_from_json(need(j, "h_elements"), c.rank);
  c.h_prime_elements = words_from_json(need(j, "h_prime_elements"), c.rank);
  return c;
}

Json mainconnex_to_json(const MainconnexCase& mc, int rank) {
  Json out;
  out["rank"] = rank;
  out["case"] = mc.tag;
  out["h_generators"] = words_to_json(mc.h_generators);
  if (mc.tag == "iii") {
    out["y"] = word_to_json(*mc.y);
    out["h"] = word_to_json(*mc.h);
    out["h_prime"] = word_to_json(*mc.h_prime);
  } else {
    out["k_generators"] = words_to_json(mc.k_generators);
  }
  return out;
}

MainconnexCase mainconnex_from_json(const Json& j, int* rank_out) {
  int rank = need_int(j, "rank");
  if (rank_out) *rank_out = rank;
  MainconnexCase mc;
  mc.tag = need_string(j, "case");
  if (mc.tag != "i" && mc.tag != "ii" && mc.tag != "iii") {
    fail(ErrorCode::kInput, "case tag must be i, ii or iii");
  }
  mc.h_generators = words_from_json(need(j, "h_generators"), rank);
  if (mc.tag == "iii") {
    mc.y = word_from_json(need(j, "y"), rank);
    mc.h = word_from_json(need(j, "h"), rank);
    mc.h_prime = word_from_json(need(j, "h_prime"), rank);
  } else {
    mc.k_generators = words_from_json(need(j, "k_generators"), rank);
  }
  return mc;
}

Json verify_report_to_json(const VerifyReport& rep) {
  Json out;
  out["pass"] = rep.pass;
  out["vacuous"] = rep.vacuous;
  Json cs = Json::array();
  for (const auto& c : rep.clauses) {
    Json e;
    e["name"] = c.name;
    e["ok"] = c.ok;
    e["detail"] = c.detail;
    cs.push_back(std::move(e));
  }
  out["clauses"] = std::move(cs);
  return out;
}

Json imagey_report_to_json(const ImageyReport& rep) {
  Json out;
  out["fixed"] = rep.fixed;
  if (rep.h_prime) out["h_prime"] = word_to_json(*rep.h_prime);
  out["h_prime_in_h"] = rep.h_prime_in_h;
  out["conjugation_ok"] = rep.conjugation_ok;
  out["conjugator_exists"] = rep.conjugator_exists;
  if (rep.conjugator) out["conjugator"] = word_to_json(*rep.conjugator);
  out["detail"] = rep.detail;
  return out;
}

Json good_r_to_json(const std::vector<GoodRRecord>& recs) {
  Json out = Json::array();
  for (const auto& rec : recs) {
    Json e;
    e["r"] = rec.r;
    e["good"] = rec.good;
    e["verdict"] = verdict_name(rec.verdict);
    e["note"] = rec.note;
    out.push_back(std::move(e));
  }
  return out;
}

Json system_to_json(const FreeFactorSystem& s) {
  Json out;
  out["rank"] = s.rank();
  Json cs = Json::array();
  for (const auto& g : s.classes()) cs.push_back(words_to_json(g.basis()));
  out["classes"] = std::move(cs);
  out["verified"] = s.verified();
  out["witnesses"] = words_to_json(s.witnesses());
  return out;
}

FreeFactorSystem system_from_json(const Json& j) {
  int rank = need_int(j, "rank");
  const Json& cs = need(j, "classes");
  if (!cs.is_array()) fail(ErrorCode::kInput, "classes must be an array");
  std::vector<SubgroupGraph> graphs;
  for (const Json& e : cs) {
    graphs.push_back(SubgroupGraph::fold(words_from_json(e, rank), rank));
  }
  return FreeFactorSystem(rank, std::move(graphs));
}

Json factor_report_to_json(const FreeFactorReport& rep) {
  Json out;
  switch (rep.verdict) {
    case FactorVerdict::kYes: out["verdict"] = "yes"; break;
    case FactorVerdict::kNo: out["verdict"] = "no"; break;
    default: out["verdict"] = "unknown"; break;
  }
  if (rep.witness) out["witness"] = endo_to_json(*rep.witness);
  out["letters"] = rep.letters;
  out["moves"] = rep.moves;
  return out;
}

Json purity_to_json(const SubgroupGraph::PurityReport& rep) {
  Json out;
  out["pure_up_to_bound"] = !rep.impure;
  out["bound"] = rep.bound;
  if (rep.impure) {
    out["witness"] = word_to_json(rep.witness);
    out["power"] = rep.power;
  }
  return out;
}

Json inertia_to_json(const SubgroupGraph::InertiaReport& rep) {
  Json out;
  out["trials"] = rep.trials;
  out["gen_len_bound"] = rep.gen_len_bound;
  out["seed"] = rep.seed;
  Json vs = Json::array();
  for (const auto& v : rep.violations) {
    Json e;
    e["k_generators"] = words_to_json(v.k_gens);
    e["k_rank"] = v.k_rank;
    e["meet_rank"] = v.meet_rank;
    vs.push_back(std::move(e));
  }
  out["violations"] = std::move(vs);
  return out;
}

Json coset_bound_to_json(const SubgroupGraph::CosetBoundReport& rep) {
  Json out;
  out["ok"] = rep.ok;
  out["distances"] = rep.distances;
  out["failing"] = rep.failing;
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kInput, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorCode::kInput, path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kInput, "cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

}  // namespace freefix::io
