#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "freefix/constructions.hpp"
#include "freefix/endomorphism.hpp"
#include "freefix/factor_system.hpp"
#include "freefix/fixed_search.hpp"
#include "freefix/subgroup_graph.hpp"
#include "freefix/word.hpp"

// JSON formats. Words are strings in the letter syntax, "1" for the identity.
//   subgroup      {"rank": n, "generators": ["a", "Bab", ...]}
//   endomorphism  {"rank": n, "images": ["ab", "b", ...]}
//   budget        {"max_len": 8, "displacement_cap": 0, "eigenvalue_len": 2}
//   certificate   {"rank", "k_factors", "y_letters", "l_generators",
//                  "w_elements", "h_elements", "h_prime_elements"}
//   case          {"rank", "case": "i"|"ii"|"iii", "h_generators",
//                  "k_generators" | "y"/"h"/"h_prime"}
// Parse errors raise kInput.

namespace freefix::io {

using Json = nlohmann::ordered_json;

Json word_to_json(const Word& w);
Word word_from_json(const Json& j, int rank);
Json words_to_json(const std::vector<Word>& ws);
std::vector<Word> words_from_json(const Json& j, int rank);

Json subgroup_to_json(const SubgroupGraph& g);
SubgroupGraph subgroup_from_json(const Json& j);

Json endo_to_json(const Endomorphism& f);
Endomorphism endo_from_json(const Json& j);

Json budget_to_json(const FixedSearchBudget& b);
FixedSearchBudget budget_from_json(const Json& j);  // absent fields keep defaults

Json fix_result_to_json(const FixResult& r);
Json eigen_records_to_json(const std::vector<EigengroupRecord>& recs);
Json partition_to_json(const IsogrediencePartition& part);
Json bh_report_to_json(const BhReport& rep);

Json certificate_to_json(const DecompositionCertificate& c);
DecompositionCertificate certificate_from_json(const Json& j);

Json mainconnex_to_json(const MainconnexCase& mc, int rank);
MainconnexCase mainconnex_from_json(const Json& j, int* rank_out = nullptr);

Json verify_report_to_json(const VerifyReport& rep);
Json imagey_report_to_json(const ImageyReport& rep);
Json good_r_to_json(const std::vector<GoodRRecord>& recs);

Json system_to_json(const FreeFactorSystem& s);
FreeFactorSystem system_from_json(const Json& j);  // classes refolded, not trusted
Json factor_report_to_json(const FreeFactorReport& rep);

Json purity_to_json(const SubgroupGraph::PurityReport& rep);
Json inertia_to_json(const SubgroupGraph::InertiaReport& rep);
Json coset_bound_to_json(const SubgroupGraph::CosetBoundReport& rep);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace freefix::io
