// tau-forge: command-line front end for tau-factorization over finite rings.
//
// Exit codes: 0 ok, 1 theorem violation, 2 spec/parse error, 3 strict mode
// met a verdict that is not decided. Errors print one line on stderr:
// "error: <kind>: <message>".

#include <cstdlib>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "tauforge/classify.hpp"
#include "tauforge/props.hpp"
#include "tauforge/report.hpp"
#include "tauforge/scan.hpp"

namespace {

using namespace tauforge;

enum Exit { kOk = 0, kViolation = 1, kSpecError = 2, kStrict = 3 };

struct Options {
  std::string ring;
  std::string tau = "full";
  std::string format = "json";
  bool strict = false;
  std::string cache_dir;
  SearchBudget budget;
  std::string element;
  std::size_t max_len = 4;
  ScanConfig scan;
};

void emit(Options const& o, Json const& doc) {
  std::cout << (o.format == "markdown" ? to_markdown(doc) : dump_canonical(doc));
}

bool decided(Json const& verdict) {
  auto s = verdict.at("status").get<std::string>();
  return s == "true" || s == "false";
}

int strict_exit(Options const& o, std::size_t undecided, char const* what) {
  if (!o.strict || undecided == 0) return kOk;
  std::cerr << "error: strict: " << undecided << " " << what << " not decided\n";
  return kStrict;
}

std::shared_ptr<FiniteRing const> load_ring(Options const& o) {
  if (o.ring.empty()) throw SpecError("--ring is required");
  return std::make_shared<FiniteRing const>(parse_ring_spec(o.ring));
}

int cmd_info(Options const& o, bool tau_given) {
  auto ring = load_ring(o);
  if (!tau_given) {
    auto doc = document("info", nullptr, o.ring, o.budget);
    doc["ring"] = ring_info_json(*ring);
    emit(o, doc);
    return kOk;
  }
  auto tau = build_tau(ring, o.tau);
  auto doc = document("info", &tau, o.ring, o.budget);
  doc["ring"] = ring_info_json(*ring);
  auto prof = analyze_tau(tau, o.budget);
  doc["tau_profile"] = tau_profile_json(tau, prof);
  emit(o, doc);
  return strict_exit(o, !prof.refinable.decided() + !prof.combinable.decided(), "tau attributes");
}

int cmd_classify(Options const& o) {
  auto ring = load_ring(o);
  auto tau = build_tau(ring, o.tau);
  Classifier cls(tau, o.budget);
  auto doc = document("classify", &tau, o.ring, o.budget);
  Json elements = Json::array();
  for (auto a : ring->nonunits()) elements.push_back(element_classification_json(*ring, cls.element(a)));
  doc["elements"] = std::move(elements);
  emit(o, doc);
  return kOk;
}

int cmd_factorizations(Options const& o) {
  auto ring = load_ring(o);
  auto tau = build_tau(ring, o.tau);
  if (o.element.empty()) throw SpecError("--element is required");
  auto e = parse_element(*ring, o.element);
  if (ring->is_unit(e)) throw SpecError("element " + o.element + " is a unit");
  ExponentPolicy pol;
  pol.kind = ExponentPolicy::Kind::LengthCap;
  pol.length_cap = o.max_len;
  auto table = enumerate_all(tau, std::nullopt, pol, o.budget.enumeration_limit);
  if (table.truncated) throw BudgetError("more than enumeration-limit factorizations");
  Classifier cls(tau, o.budget);
  auto doc = document("factorizations", &tau, o.ring, o.budget);
  doc["element"] = element_json(*ring, e);
  doc["max_len"] = o.max_len;
  Json fs = Json::array();
  std::size_t undecided = 0;
  for (auto const& f : table.by_target[idx(e)]) {
    auto c = factorization_classification_json(*ring, cls.classify(f));
    undecided += !decided(c.at("complete"));
    fs.push_back(std::move(c));
  }
  doc["factorizations"] = std::move(fs);
  emit(o, doc);
  return strict_exit(o, undecided, "completeness verdicts");
}

int cmd_props(Options const& o) {
  auto ring = load_ring(o);
  auto tau = build_tau(ring, o.tau);
  PropertyChecker pc(tau, o.budget);
  auto doc = document("props", &tau, o.ring, o.budget);
  doc["tau_profile"] = tau_profile_json(tau, pc.profile());
  doc["properties"] = property_report_json(*ring, pc.report());
  emit(o, doc);
  std::size_t undecided = 0;
  for (auto const& [name, v] : doc["properties"]["properties"].items()) undecided += !decided(v);
  return strict_exit(o, undecided, "properties");
}

// One line; the report on stdout lists every violated arrow.
int report_violations(Json const& violated) {
  if (violated.empty()) return kOk;
  auto const& v = violated.front();
  std::cerr << "error: violation: " << violated.size() << " violated arrow(s); first "
            << v.at("arrow").get<std::string>() << " on " << v.at("instance").get<std::string>() << "\n";
  return kViolation;
}

int cmd_verify(Options const& o) {
  auto ring = load_ring(o);
  auto tau = build_tau(ring, o.tau);
  PropertyChecker pc(tau, o.budget);
  auto rep = pc.verify();
  auto doc = document("verify", &tau, o.ring, o.budget);
  doc["diagram"] = diagram_report_json(rep);
  emit(o, doc);
  Json violated = Json::array();
  for (auto const& a : rep.arrows)
    if (a.status == ArrowStatus::Violated) violated.push_back(Json{{"arrow", a.name}, {"instance", rep.instance}});
  if (int rc = report_violations(violated)) return rc;
  return strict_exit(o, rep.count(ArrowStatus::SkippedUndecided), "arrows");
}

int cmd_scan(Options o) {
  o.scan.budget = o.budget;
  if (!o.cache_dir.empty()) {
    o.scan.cache_dir = o.cache_dir;
  } else if (char const* env = std::getenv("TAU_FORGE_CACHE"); env && *env) {
    o.scan.cache_dir = env;
  }
  if (o.scan.threads == 0) o.scan.threads = std::max(1u, std::thread::hardware_concurrency());
  auto res = run_scan(o.scan);
  emit(o, res.document);
  if (o.scan.cache_dir)
    std::cerr << "cache: " << res.cache_hits << " of " << res.document["scan"]["instances"].size()
              << " instances reused from " << o.scan.cache_dir->string() << "\n";
  if (int rc = report_violations(res.document["scan"]["violated"])) return rc;
  return strict_exit(o, res.skipped, "arrows");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tau-forge: tau-factorization over finite commutative rings"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool needs_ring) {
    auto* r = sub->add_option("--ring", o.ring, "Z<n>, Z<n>xZ<m>..., or tables:<path>");
    if (needs_ring) r->required();
    sub->add_option("--tau", o.tau, "full, empty, zero, comax, subset:{..}, modideal:<gens>, pairs:{..}, random:<seed>")
        ->capture_default_str();
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "markdown"}))
        ->capture_default_str();
    sub->add_flag("--strict", o.strict, "Exit 3 when a verdict is only bounded or undecided");
    sub->add_option("--exponent-cap", o.budget.exponent_cap, "0 means ring size + 1")->capture_default_str();
    sub->add_option("--length-cap", o.budget.length_cap)->capture_default_str();
    sub->add_option("--refine-part-cap", o.budget.refine_part_cap)->capture_default_str();
    sub->add_option("--enumeration-limit", o.budget.enumeration_limit)->capture_default_str();
  };

  auto* info = app.add_subcommand("info", "Ring structure (and tau attributes with --tau)");
  common(info, true);
  auto* classify = app.add_subcommand("classify", "Irreducibility grades of every nonunit");
  common(classify, true);
  auto* facts = app.add_subcommand("factorizations", "Factorizations of one element with grade flags");
  common(facts, true);
  facts->add_option("--element", o.element, "Element index or tuple")->required();
  facts->add_option("--max-len", o.max_len)->capture_default_str();
  auto* props = app.add_subcommand("props", "Ring-level property report");
  common(props, true);
  auto* verify = app.add_subcommand("verify", "Check every theorem arrow on one instance");
  common(verify, true);
  auto* scan = app.add_subcommand("scan", "Verify the whole corpus");
  common(scan, false);
  scan->add_option("--max-order", o.scan.max_order)->capture_default_str();
  scan->add_option("--random-taus", o.scan.random_taus)->capture_default_str();
  scan->add_option("--seed", o.scan.seed)->capture_default_str();
  scan->add_option("--threads", o.scan.threads, "0 uses every hardware thread")->capture_default_str();
  scan->add_option("--cache-dir", o.cache_dir, "Per-instance cache (default $TAU_FORGE_CACHE)");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return kSpecError;
  }

  try {
    if (*info) return cmd_info(o, info->count("--tau") > 0);
    if (*classify) return cmd_classify(o);
    if (*facts) return cmd_factorizations(o);
    if (*props) return cmd_props(o);
    if (*verify) return cmd_verify(o);
    if (*scan) return cmd_scan(o);
  } catch (SpecError const& e) {
    std::cerr << "error: spec: " << e.what() << "\n";
    return kSpecError;
  } catch (RingAxiomError const& e) {
    std::cerr << "error: spec: " << e.what() << "\n";
    return kSpecError;
  } catch (BudgetError const& e) {
    std::cerr << "error: budget: " << e.what() << "\n";
    return kSpecError;
  } catch (std::exception const& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return kSpecError;
  }
  return kOk;
}
