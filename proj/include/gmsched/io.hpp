#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmsched/config_lp.hpp"
#include "gmsched/gapgen.hpp"
#include "gmsched/instance.hpp"
#include "gmsched/labelcover.hpp"
#include "gmsched/reduction.hpp"
#include "gmsched/setsys.hpp"

namespace gmsched::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "gmsched/1";

/// Malformed document: message names the line (syntax) or the field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses text, turning syntax errors into ParseError with line and column.
Json parse(const std::string& text);
/// Checks the schema tag and returns the kind.
std::string kind_of(const Json& doc);
/// Throws ParseError unless doc has the given kind.
void expect_kind(const Json& doc, const std::string& kind);

Json document(const std::string& kind);
/// Two-space indented, trailing newline.
std::string dump(const Json& doc);

struct SetSystemFile {
  SetSystem system;
  std::optional<std::size_t> cover_budget;
  std::optional<double> beta;
};

Json to_json(const SetSystemFile& f);
SetSystemFile set_system_from_json(const Json& doc);

Json to_json(const MixtureNorm& norm);
MixtureNorm norm_from_json(const Json& j, const std::string& where);

Json to_json(const SchedulingInstance& inst);
SchedulingInstance instance_from_json(const Json& doc);

/// Scheduling instance from an instance, gap-instance, reduced-instance or
/// fractional-solution (embedded instance) document.
SchedulingInstance any_instance_from_json(const Json& doc);

Json to_json(const Assignment& a);
Assignment assignment_from_json(const Json& doc);
Json assignments_to_json(const std::vector<Assignment>& pool);
std::vector<Assignment> assignments_from_json(const Json& doc);

Json to_json(const FractionalSolution& sol, const SchedulingInstance* embed = nullptr);
FractionalSolution fractional_from_json(const Json& doc);

Json to_json(const LabelCoverInstance& lc, const Labeling* planted = nullptr);
LabelCoverInstance label_cover_from_json(const Json& doc);
std::optional<Labeling> planted_from_json(const Json& doc);

Json to_json(const Labeling& sigma);
Labeling labeling_from_json(const Json& doc);

Json to_json(const GapParams& p);
GapParams gap_params_from_json(const Json& j);
/// The scheduling instance is derivable from params and systems; loading
/// rebuilds it and, when the document embeds one, checks that they agree.
Json to_json(const GapInstance& g, bool embed_instance = true);
GapInstance gap_instance_from_json(const Json& doc);

Json to_json(const ReductionParams& p);
ReductionParams reduction_params_from_json(const Json& j);
/// Stores the label cover, parameters and per-(edge, class) seeds; loading
/// rebuilds the instance and checks the seeds.
Json to_json(const ReducedInstance& r, const Labeling* planted = nullptr);
ReducedInstance reduced_from_json(const Json& doc);

Json to_json(const Witness& w);
Json to_json(const ExhaustiveReport& r);
Json to_json(const MonteCarloReport& r);
Json to_json(const FeasibilityReport& r);
Json to_json(const CoverageAudit& a);
Json to_json(const StructuralReport& r);
Json to_json(const SoundnessReport& r);
Json to_json(const AxiomReport& r);

}  // namespace gmsched::io
