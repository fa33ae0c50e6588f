#include "tauforge/report.hpp"

#include <sstream>

namespace tauforge {

Json element_json(FiniteRing const& R, ElementId a) {
  return Json{{"index", idx(a)}, {"display", R.display(a)}};
}

namespace {

Json elements_json(FiniteRing const& R, std::vector<ElementId> const& xs) {
  Json out = Json::array();
  for (auto x : xs) out.push_back(element_json(R, x));
  return out;
}

Json classes_json(FiniteRing const& R, AssocKind kind) {
  Json out = Json::array();
  for (auto a : R.elements()) {
    if (R.class_of(a, kind) != a) continue;
    std::vector<ElementId> members;
    for (auto b : R.elements())
      if (R.class_of(b, kind) == a) members.push_back(b);
    out.push_back(elements_json(R, members));
  }
  return out;
}

}  // namespace

Json factorization_json(FiniteRing const& R, Factorization const& f) {
  return Json{{"target", element_json(R, f.target)},
              {"unit", element_json(R, f.unit)},
              {"factors", elements_json(R, f.factors)},
              {"text", format_factorization(R, f)}};
}

Json verdict_json(FiniteRing const& R, Verdict const& v) {
  Json out{{"status", std::string(to_string(v.status))}, {"note", v.note}};
  if (v.bound) out["bound"] = budget_json(*v.bound);
  if (v.witness) {
    auto const& w = *v.witness;
    Json j{{"description", w.description}};
    if (w.factorization) j["factorization"] = factorization_json(R, *w.factorization);
    if (w.other) j["other"] = factorization_json(R, *w.other);
    if (!w.sequence.empty()) j["sequence"] = elements_json(R, w.sequence);
    if (w.pump)
      j["pump"] = Json{{"element", element_json(R, w.pump->element)},
                       {"exponent", w.pump->exponent},
                       {"period", w.pump->period}};
    out["witness"] = std::move(j);
  }
  return out;
}

Json budget_json(SearchBudget const& b) {
  return Json{{"exponent_cap", b.exponent_cap},
              {"length_cap", b.length_cap},
              {"refine_part_cap", b.refine_part_cap},
              {"enumeration_limit", b.enumeration_limit}};
}

Json ring_info_json(FiniteRing const& R) {
  Json out{{"label", R.label()},
           {"order", R.size()},
           {"units", elements_json(R, R.units())},
           {"rsharp", elements_json(R, R.nonzero_nonunits())},
           {"associate_classes", classes_json(R, AssocKind::Associate)},
           {"strong_associate_classes", classes_json(R, AssocKind::StrongAssociate)},
           {"presimplifiable", R.is_presimplifiable()},
           {"strongly_associate", R.is_strongly_associate()},
           {"very_strongly_associate", R.is_very_strongly_associate()}};
  if (auto w = R.presimplifiable_witness())
    out["presimplifiable_witness"] = Json{{"x", element_json(R, w->first)}, {"y", element_json(R, w->second)}};
  Json self_vs = Json::array();
  for (auto a : R.nonunits())
    if (R.are_related(a, a, AssocKind::VeryStrongAssociate)) self_vs.push_back(element_json(R, a));
  out["very_strongly_self_associate"] = std::move(self_vs);
  Json powers = Json::array();
  for (auto a : R.nonunits())
    powers.push_back(Json{{"element", element_json(R, a)},
                          {"index", R.power_index(a)},
                          {"period", R.power_period(a)}});
  out["powers"] = std::move(powers);
  return out;
}

Json tau_profile_json(TauRelation const& tau, TauProfile const& p) {
  auto const& R = tau.ring();
  Json pairs = Json::array();
  for (auto [a, b] : tau.pairs()) pairs.push_back(Json::array({element_json(R, a), element_json(R, b)}));
  Json ap = Json::object();
  for (auto k : {AssocKind::Associate, AssocKind::StrongAssociate, AssocKind::VeryStrongAssociate})
    ap[std::string(to_string(k))] = p.associate_preserving[static_cast<std::size_t>(k)];
  return Json{{"label", tau.label()},
              {"canonical", tau.canonical_spec()},
              {"pairs", std::move(pairs)},
              {"multiplicative", p.multiplicative},
              {"divisive", p.divisive},
              {"associate_preserving", std::move(ap)},
              {"combinable", verdict_json(R, p.combinable)},
              {"refinable", verdict_json(R, p.refinable)}};
}

Json element_classification_json(FiniteRing const& R, ElementClassification const& c) {
  Json w = Json::object();
  for (auto const& [flag, f] : c.witnesses) w[flag] = factorization_json(R, f);
  return Json{{"element", element_json(R, c.element)},
              {"irreducible", c.irreducible},
              {"strongly_irreducible", c.strongly_irreducible},
              {"m_irreducible", c.m_irreducible},
              {"unrefinably_irreducible", c.unrefinably_irreducible},
              {"very_strongly_irreducible", c.very_strongly_irreducible},
              {"witnesses", std::move(w)}};
}

Json factorization_classification_json(FiniteRing const& R, FactorizationClassification const& c) {
  return Json{{"factorization", factorization_json(R, c.factorization)},
              {"atomic", c.atomic},
              {"strongly_atomic", c.strongly_atomic},
              {"m_atomic", c.m_atomic},
              {"unrefinably_atomic", c.unrefinably_atomic},
              {"very_strongly_atomic", c.very_strongly_atomic},
              {"complete", verdict_json(R, c.complete)}};
}

Json property_report_json(FiniteRing const& R, PropertyReport const& rep) {
  Json props = Json::object();
  for (auto const& [name, v] : rep.properties) props[name] = verdict_json(R, v);
  Json counts = Json::object();
  for (auto const& [name, m] : rep.counts) {
    Json c = Json::object();
    for (auto const& [k, n] : m) c[k] = n;
    counts[name] = std::move(c);
  }
  return Json{{"instance", rep.instance},
              {"properties", std::move(props)},
              {"counts", std::move(counts)},
              {"notes", rep.notes},
              {"budget", budget_json(rep.budget)}};
}

Json diagram_report_json(DiagramReport const& rep) {
  Json arrows = Json::array();
  for (auto const& a : rep.arrows) {
    Json j{{"name", a.name},
           {"hypotheses", a.hypotheses},
           {"status", std::string(to_string(a.status))},
           {"applied", a.applied}};
    if (a.counterexample) j["counterexample"] = *a.counterexample;
    arrows.push_back(std::move(j));
  }
  Json summary = Json::object();
  for (auto s : {ArrowStatus::Verified, ArrowStatus::Vacuous, ArrowStatus::SkippedUndecided,
                 ArrowStatus::Violated})
    summary[std::string(to_string(s))] = rep.count(s);
  return Json{{"instance", rep.instance}, {"arrows", std::move(arrows)}, {"summary", std::move(summary)}};
}

Json document(std::string const& command, TauRelation const* tau, std::string const& ring_spec,
              SearchBudget const& budget) {
  Json instance{{"ring", ring_spec}};
  if (tau) {
    instance["tau"] = tau->label();
    instance["tau_canonical"] = tau->canonical_spec();
  }
  return Json{{"schema_version", kReportSchemaVersion},
              {"command", command},
              {"instance", std::move(instance)},
              {"budget", budget_json(budget)}};
}

std::string dump_canonical(Json const& doc) { return doc.dump(2) + "\n"; }

namespace {

std::string mark(Json const& b) { return b.get<bool>() ? "✓" : "✗"; }

std::string el(Json const& e) {
  auto const d = e.at("display").get<std::string>();
  auto const i = std::to_string(e.at("index").get<std::size_t>());
  return d == i ? d : d + " [#" + i + "]";
}

std::string el_list(Json const& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + el(xs[i]);
  return s + "}";
}

std::string verdict_cell(Json const& v) {
  std::string s = v.at("status").get<std::string>();
  if (v.contains("witness")) {
    auto const& w = v.at("witness");
    if (w.contains("factorization")) s += "; witness " + w.at("factorization").at("text").get<std::string>();
    if (w.contains("description") && !w.at("description").get<std::string>().empty())
      s += "; " + w.at("description").get<std::string>();
  }
  if (!v.at("note").get<std::string>().empty()) s += " (" + v.at("note").get<std::string>() + ")";
  return s;
}

void render_info(std::ostream& os, Json const& ring) {
  os << "| field | value |\n|---|---|\n";
  os << "| order | " << ring.at("order") << " |\n";
  os << "| units | " << el_list(ring.at("units")) << " |\n";
  os << "| R# | " << el_list(ring.at("rsharp")) << " |\n";
  os << "| présimplifiable | " << mark(ring.at("presimplifiable")) << " |\n";
  os << "| strongly associate | " << mark(ring.at("strongly_associate")) << " |\n";
  os << "| very strongly associate | " << mark(ring.at("very_strongly_associate")) << " |\n";
  os << "\nAssociate classes: ";
  for (auto const& c : ring.at("associate_classes")) os << el_list(c) << " ";
  os << "\n\nStrong associate classes: ";
  for (auto const& c : ring.at("strong_associate_classes")) os << el_list(c) << " ";
  os << "\n";
}

void render_elements(std::ostream& os, Json const& elements) {
  os << "| element | irr | s-irr | m-irr | unref | vs | witnesses |\n|---|---|---|---|---|---|---|\n";
  for (auto const& e : elements) {
    std::string w;
    for (auto const& [flag, f] : e.at("witnesses").items())
      w += (w.empty() ? "" : "; ") + flag + ": " + f.at("text").get<std::string>();
    os << "| " << el(e.at("element")) << " | " << mark(e.at("irreducible")) << " | "
       << mark(e.at("strongly_irreducible")) << " | " << mark(e.at("m_irreducible")) << " | "
       << mark(e.at("unrefinably_irreducible")) << " | " << mark(e.at("very_strongly_irreducible"))
       << " | " << w << " |\n";
  }
}

void render_factorizations(std::ostream& os, Json const& fs) {
  os << "| factorization | atomic | strongly | m | unref | vs | complete |\n"
        "|---|---|---|---|---|---|---|\n";
  for (auto const& f : fs) {
    os << "| " << f.at("factorization").at("text").get<std::string>() << " | " << mark(f.at("atomic"))
       << " | " << mark(f.at("strongly_atomic")) << " | " << mark(f.at("m_atomic")) << " | "
       << mark(f.at("unrefinably_atomic")) << " | " << mark(f.at("very_strongly_atomic")) << " | "
       << f.at("complete").at("status").get<std::string>() << " |\n";
  }
}

void render_props(std::ostream& os, Json const& rep) {
  os << "| property | verdict |\n|---|---|\n";
  for (auto const& [name, v] : rep.at("properties").items()) os << "| " << name << " | " << verdict_cell(v) << " |\n";
  for (auto const& n : rep.at("notes")) os << "\nNote: " << n.get<std::string>() << "\n";
}

void render_arrows(std::ostream& os, Json const& rep) {
  auto const& s = rep.at("summary");
  os << "Verified " << s.at("verified") << ", vacuous " << s.at("vacuous") << ", skipped-undecided "
     << s.at("skipped-undecided") << ", violated " << s.at("violated") << ".\n\n";
  os << "| arrow | status | applied | hypotheses | counterexample |\n|---|---|---|---|---|\n";
  for (auto const& a : rep.at("arrows")) {
    std::string h;
    for (auto const& x : a.at("hypotheses")) h += (h.empty() ? "" : ", ") + x.get<std::string>();
    os << "| " << a.at("name").get<std::string>() << " | " << a.at("status").get<std::string>() << " | "
       << a.at("applied") << " | " << h << " | " << a.value("counterexample", std::string()) << " |\n";
  }
}

void render_scan(std::ostream& os, Json const& scan) {
  os << "| instance | verified | vacuous | skipped-undecided | violated |\n|---|---|---|---|---|\n";
  for (auto const& i : scan.at("instances")) {
    auto const& s = i.at("summary");
    os << "| " << i.at("instance").get<std::string>() << " | " << s.at("verified") << " | "
       << s.at("vacuous") << " | " << s.at("skipped-undecided") << " | " << s.at("violated") << " |\n";
  }
  auto list = [&](char const* key, char const* title) {
    if (scan.at(key).empty()) return;
    os << "\n## " << title << "\n\n";
    for (auto const& a : scan.at(key))
      os << "- " << a.at("instance").get<std::string>() << ": " << a.at("arrow").get<std::string>()
         << (a.contains("counterexample") ? " (" + a.at("counterexample").get<std::string>() + ")" : "")
         << "\n";
  };
  list("violated", "Violated arrows");
  list("skipped", "Skipped-undecided arrows");
}

}  // namespace

std::string to_markdown(Json const& doc) {
  std::ostringstream os;
  auto const cmd = doc.at("command").get<std::string>();
  auto const& inst = doc.at("instance");
  os << "# tau-forge " << cmd << ": " << inst.at("ring").get<std::string>();
  if (inst.contains("tau")) os << " / " << inst.at("tau").get<std::string>();
  os << "\n\n";
  if (doc.contains("ring")) render_info(os, doc.at("ring"));
  if (doc.contains("tau_profile")) {
    auto const& p = doc.at("tau_profile");
    os << "\nτ: " << p.at("canonical").get<std::string>() << "; multiplicative "
       << mark(p.at("multiplicative")) << ", divisive " << mark(p.at("divisive")) << ", refinable "
       << verdict_cell(p.at("refinable")) << ", combinable " << verdict_cell(p.at("combinable")) << "\n";
  }
  if (doc.contains("elements")) render_elements(os, doc.at("elements"));
  if (doc.contains("factorizations")) render_factorizations(os, doc.at("factorizations"));
  if (doc.contains("properties")) render_props(os, doc.at("properties"));
  if (doc.contains("diagram")) render_arrows(os, doc.at("diagram"));
  if (doc.contains("scan")) render_scan(os, doc.at("scan"));
  return os.str();
}

}  // namespace tauforge
