#pragma once

#include <string>

#include "json.hpp"
#include "tauforge/props.hpp"

namespace tauforge {

using Json = nlohmann::json;

/// Version of the document layout in schema/report.schema.json.
inline constexpr int kReportSchemaVersion = 1;

Json element_json(FiniteRing const& R, ElementId a);
Json factorization_json(FiniteRing const& R, Factorization const& f);
Json verdict_json(FiniteRing const& R, Verdict const& v);
Json budget_json(SearchBudget const& b);

/// Units, R#, associate classes, présimplifiable and strongly associate flags.
Json ring_info_json(FiniteRing const& R);
Json tau_profile_json(TauRelation const& tau, TauProfile const& p);
Json element_classification_json(FiniteRing const& R, ElementClassification const& c);
Json factorization_classification_json(FiniteRing const& R, FactorizationClassification const& c);
Json property_report_json(FiniteRing const& R, PropertyReport const& rep);
Json diagram_report_json(DiagramReport const& rep);

/// Skeleton shared by every command: command, instance, budget, version.
Json document(std::string const& command, TauRelation const* tau, std::string const& ring_spec,
              SearchBudget const& budget);

/// Objects keep sorted keys, so dump() is canonical.
std::string dump_canonical(Json const& doc);

/// Markdown rendering of any document produced by the CLI.
std::string to_markdown(Json const& doc);

}  // namespace tauforge
