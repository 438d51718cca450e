#include "hgeom/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "hgeom/checker.hpp"
#include "hgeom/constructions.hpp"
#include "hgeom/drivers.hpp"
#include "hgeom/serialize.hpp"
#include "hgeom/verdicts.hpp"

namespace hgeom {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr const char* kBudgetVariable = "HGEOM_BUDGET";

int parse_int(const std::string& text, const std::string& what, int min) {
  int v = 0;
  std::size_t used = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw UsageError(what + " must be an integer, got '" + text + "'");
  }
  if (used != text.size()) throw UsageError(what + " must be an integer, got '" + text + "'");
  if (v < min) throw UsageError(what + " must be >= " + std::to_string(min));
  return v;
}

std::vector<int> parse_list(const std::string& text, const std::string& what, int min) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_int(item, what, min));
  if (out.empty()) throw UsageError(what + " is empty");
  return out;
}

FiniteAbelianGroup parse_group(const std::string& text) {
  return FiniteAbelianGroup(parse_list(text, "group factor", 2));
}

std::string group_name(const FiniteAbelianGroup& g) {
  std::string s;
  for (auto f : g.factors()) s += (s.empty() ? "Z_" : " x Z_") + std::to_string(f);
  return s;
}

std::size_t derivation_budget(std::optional<std::size_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kBudgetVariable); env && *env) {
    return static_cast<std::size_t>(parse_int(env, kBudgetVariable, 1));
  }
  return kDefaultBudget;
}

std::string field_name(const Field& f) {
  std::string s = "GF(" + std::to_string(f.size()) + ")";
  if (f.degree() > 1) s += " mod " + f.modulus_text();
  return s;
}

std::shared_ptr<const Field> parse_field(const std::string& text) {
  const auto v = parse_list(text, "field", 1);
  if (v.size() > 2) throw UsageError("--field takes p or p,m");
  try {
    return std::make_shared<const Field>(v[0], v.size() == 2 ? v[1] : 1);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void write_doc(const std::string& path, const Json& j, std::ostream& out) {
  if (path.empty()) return;
  write_json_file(path, j);
  out << "wrote " << path << "\n";
}

std::string verdict_word(Status s) {
  return s == Status::Contradiction ? "NOT-EMBEDDABLE" : "CONSISTENT";
}

void summarize(std::ostream& out, const DerivationTrace& trace) {
  out << count_steps(trace.root) << " steps, " << count_leaves(trace.root, true) << " branch(es) closed, "
      << count_leaves(trace.root, false) << " open\n";
  for (const auto& n : trace.notes) out << "note: " << n << "\n";
}

void print_coordinates(std::ostream& out, const Representation& rep) {
  const auto& g = *rep.geometry;
  const auto& f = *rep.field;
  std::size_t width = 0;
  for (const auto& n : g.names()) width = std::max(width, n.size());
  for (PointId p = 0; p < g.point_count(); ++p) {
    const auto& c = rep.points[p].coords;
    out << "  " << std::left << std::setw(static_cast<int>(width)) << g.name(p) << "  (" << f.to_string(c[0])
        << ", " << f.to_string(c[1]) << ", " << f.to_string(c[2]) << ")\n";
  }
}

// ---- build ----------------------------------------------------------------

struct Built {
  GeometryDocument doc;
  std::string label;
};

struct BuildArgs {
  std::string kind;
  std::string param;
  std::string group;
  std::string out;
};

Built build_geometry(const BuildArgs& a) {
  const std::string param = !a.group.empty() ? a.group : a.param;
  if (param.empty()) throw UsageError("build " + a.kind + " needs a parameter");
  if (a.kind == "mn") {
    const int n = parse_int(param, "n", 2);
    return {{m_matroid(n), Provenance{"mn", {{"n", n}}}}, "M(" + std::to_string(n) + ")"};
  }
  if (a.kind == "lift0" || a.kind == "lift") {
    const auto g = parse_group(param);
    return {{a.kind == "lift0" ? lift0(g) : lift(g), Provenance{a.kind, {{"group", g.factors()}}}},
            a.kind + "(" + group_name(g) + ")"};
  }
  throw UsageError("unknown construction '" + a.kind + "' (expected mn, lift0 or lift)");
}

int cmd_build(const BuildArgs& a, std::ostream& out) {
  const auto [doc, label] = build_geometry(a);
  out << label << ": " << doc.geometry.point_count() << " points, " << doc.geometry.long_lines().size()
      << " long lines\n";
  write_doc(a.out, to_json(doc), out);
  return kExitOk;
}

// ---- derive ---------------------------------------------------------------

struct DeriveArgs {
  std::string target;
  std::vector<std::string> params;
  std::string out;
  std::string geometry_out;
  std::optional<std::size_t> budget;
  bool show = false;
};

const std::string& param(const DeriveArgs& a, std::size_t k, const char* what) {
  if (a.params.size() <= k) throw UsageError("derive " + a.target + " needs " + what);
  return a.params[k];
}

int cmd_derive(const DeriveArgs& a, std::ostream& out) {
  const auto budget = derivation_budget(a.budget);
  const auto expect = [&](std::size_t n) {
    if (a.params.size() != n) {
      throw UsageError("derive " + a.target + " takes " + std::to_string(n) + " parameter(s)");
    }
  };

  if (a.target == "prime-power" || a.target == "two-primes") {
    expect(2);
    const int x = parse_int(param(a, 0, "p"), "p", 2);
    const int y = parse_int(param(a, 1, "a second parameter"), a.target == "prime-power" ? "n" : "q", 2);
    const bool pp = a.target == "prime-power";
    if (!is_prime(x) || (!pp && (!is_prime(y) || x >= y))) {
      throw UsageError(pp ? "prime-power needs p prime" : "two-primes needs primes p < q");
    }
    int order = 1;
    if (pp) {
      for (int k = 0; k < y; ++k) order *= x;
    }
    const auto group = pp ? FiniteAbelianGroup::cyclic(order) : FiniteAbelianGroup({x, y});
    auto trace = pp ? derive_prime_power(x, y, budget) : derive_two_primes(x, y, budget);
    Certificate cert;
    cert.phases.push_back({a.target, lift0(group), std::move(trace)});
    const auto& ph = cert.phases.front();
    out << "lift0(" << group_name(group) << "): ";
    summarize(out, ph.trace);
    if (a.show) out << render_trace(ph.base, ph.trace);
    write_doc(a.out, to_json(cert), out);
    out << verdict_word(ph.trace.claimed) << "\n";
    return ph.trace.claimed == Status::Contradiction ? kExitOk : kExitNegative;
  }

  if (a.target == "extend") {
    expect(1);
    const int n = parse_int(param(a, 0, "n"), "n", 2);
    auto ext = extend_mn(n, budget);
    const bool iso = are_isomorphic(ext.geometry, lift0(FiniteAbelianGroup::cyclic(n))).has_value();
    out << "M(" << n << "): ";
    summarize(out, ext.trace);
    out << "extended geometry: " << ext.geometry.point_count() << " points ("
        << ext.geometry.point_count() - (2 * n + 3) << " derived), " << ext.geometry.long_lines().size()
        << " long lines; isomorphic to lift0(Z_" << n << "): " << (iso ? "yes" : "no") << "\n";
    if (a.show) out << render_trace(m_matroid(n), ext.trace);
    if (!a.geometry_out.empty()) {
      write_doc(a.geometry_out, to_json(GeometryDocument{ext.geometry, Provenance{"extend", {{"n", n}}}}), out);
    }
    Certificate cert;
    cert.phases.push_back({"extension of M(" + std::to_string(n) + ")", m_matroid(n), std::move(ext.trace)});
    write_doc(a.out, to_json(cert), out);
    out << "EXTENDED\n";
    return kExitOk;
  }

  if (a.target == "verdict-mn") {
    expect(1);
    const int n = parse_int(param(a, 0, "n"), "n", 2);
    const auto v = verdict_mn(n, budget);
    for (const auto& ph : v.certificate.phases) {
      out << ph.label << ": ";
      summarize(out, ph.trace);
      if (a.show) out << render_trace(ph.base, ph.trace);
    }
    write_doc(a.out, to_json(v.certificate), out);
    if (v.representable) {
      out << "EMBEDDABLE: M(" << n << ") is representable exactly in characteristic "
          << render_set(v.characteristic) << " (theorem, not computed here)\n";
    } else {
      out << "NOT-EMBEDDABLE: M(" << n << ") embeds in no harmonic matroid\n";
    }
    return kExitOk;
  }

  if (a.target == "verdict-group") {
    expect(1);
    const auto g = parse_group(param(a, 0, "group factors"));
    const auto v = verdict_group(g, budget);
    out << "lift0(" << group_name(g) << "): " << describe(v.group_class) << "\n";
    if (v.embeddable) {
      const auto& rep = *v.representation;
      out << "additive representation over " << field_name(*rep.field) << ": "
          << (v.representation_verified ? "verified" : "FAILED verification") << "\n";
      if (a.show) print_coordinates(out, rep);
      write_doc(a.out, to_json(rep), out);
      out << (v.representation_verified ? "EMBEDDABLE" : "UNVERIFIED") << "\n";
      return v.representation_verified ? kExitOk : kExitNegative;
    }
    const auto& ph = v.certificate.phases.front();
    summarize(out, ph.trace);
    if (a.show) out << render_trace(ph.base, ph.trace);
    write_doc(a.out, to_json(v.certificate), out);
    out << verdict_word(ph.trace.claimed) << "\n";
    return ph.trace.claimed == Status::Contradiction ? kExitOk : kExitNegative;
  }

  throw UsageError("unknown derive target '" + a.target +
                   "' (expected prime-power, two-primes, extend, verdict-mn or verdict-group)");
}

// ---- check ----------------------------------------------------------------

int cmd_check(const std::string& path, std::ostream& out) {
  const auto cert = certificate_from_json(read_json_file(path));
  const auto report = check_certificate(cert);
  if (!report.ok) {
    out << "INVALID: " << report.error << "\n";
    return kExitNegative;
  }
  out << "VALID: " << cert.phases.size() << " phase(s), " << report.steps_checked << " steps replayed, claimed "
      << to_string(cert.claimed()) << "\n";
  return kExitOk;
}

// ---- linrep ---------------------------------------------------------------

struct LinrepArgs {
  std::vector<std::string> target;
  std::string field;
  bool search = false;
  bool explicit_rep = false;
  std::optional<std::size_t> budget;
  std::string out;
};

int cmd_linrep(const LinrepArgs& a, std::ostream& out) {
  if (a.search == a.explicit_rep) throw UsageError("linrep needs exactly one of --search or --explicit");
  const auto field = parse_field(a.field);
  std::shared_ptr<const Rank3Geometry> geom;
  std::string label;
  std::optional<Representation> rep;

  if (a.target.size() == 1) {
    if (a.explicit_rep) throw UsageError("--explicit needs a construction target (lift N or lift0 F)");
    geom = std::make_shared<const Rank3Geometry>(
        geometry_document_from_json(read_json_file(a.target[0])).geometry);
    label = a.target[0];
  } else if (a.target.size() == 2) {
    const auto& kind = a.target[0];
    if (kind == "mn") {
      const int n = parse_int(a.target[1], "n", 2);
      label = "M(" + std::to_string(n) + ")";
      if (a.explicit_rep) throw UsageError("no explicit representation family for M(n); use --search");
      geom = std::make_shared<const Rank3Geometry>(m_matroid(n));
    } else if (kind == "lift" || kind == "lift0") {
      const auto g = parse_group(a.target[1]);
      label = kind + "(" + group_name(g) + ")";
      if (a.explicit_rep) {
        if (kind == "lift" && g.factors().size() == 1) {
          try {
            rep = multiplicative_rep(g.order(), field);
          } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
          }
        } else if (kind == "lift0") {
          const auto cls = classify(g);
          const auto* ea = std::get_if<ElementaryAbelian>(&cls);
          if (!ea || field->characteristic() != ea->p || field->degree() != ea->k ||
              g.factors().size() != static_cast<std::size_t>(ea->k)) {
            throw UsageError("explicit lift0 representations need (Z_p)^k over GF(p^k)");
          }
          rep = additive_rep(ea->p, ea->k);
        } else {
          throw UsageError("explicit lift representations need a cyclic group");
        }
        geom = rep->geometry;
      } else {
        geom = std::make_shared<const Rank3Geometry>(kind == "lift0" ? lift0(g) : lift(g));
      }
    } else {
      throw UsageError("unknown linrep target '" + kind + "' (expected a path, mn N, lift F or lift0 F)");
    }
  } else {
    throw UsageError("linrep takes a geometry path or a construction (mn N, lift F, lift0 F)");
  }

  out << label << " over " << field_name(*field) << "\n";
  if (a.explicit_rep) {
    const bool ok = verify_representation(*geom, *rep);
    print_coordinates(out, *rep);
    if (ok) write_doc(a.out, to_json(*rep), out);
    out << (ok ? "VERIFIED" : "FAILED") << "\n";
    return ok ? kExitOk : kExitNegative;
  }
  const auto budget = a.budget.value_or(kDefaultSearchBudget);
  const auto r = search_representation(geom, field, budget);
  out << r.nodes << " candidate placements examined\n";
  if (r.outcome == SearchOutcome::Found) {
    print_coordinates(out, *r.representation);
    write_doc(a.out, to_json(*r.representation), out);
  }
  out << to_string(r.outcome) << "\n";
  switch (r.outcome) {
    case SearchOutcome::Found: return kExitOk;
    case SearchOutcome::NoneExhaustive: return kExitNegative;
    case SearchOutcome::BudgetExceeded: return kExitBudget;
  }
  return kExitNegative;
}

// ---- charset --------------------------------------------------------------

struct CharsetArgs {
  int n = 0;
  long long prime_bound = 13;
  int m_max = 2;
  std::optional<std::size_t> budget;
  std::string out;
};

int cmd_charset(const CharsetArgs& a, std::ostream& out) {
  if (a.n < 2) throw UsageError("n must be >= 2");
  if (a.prime_bound < 2) throw UsageError("--prime-bound must be >= 2");
  if (a.m_max < 1) throw UsageError("--m-max must be >= 1");
  CharSetReport report;
  try {
    report = char_set_lift(a.n, a.prime_bound, a.m_max, a.budget.value_or(kDefaultSearchBudget));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto cited = char_set_report(a.n);
  bool budget_hit = false;

  out << "lift(Z_" << a.n << "): predicted linear characteristic set " << render_set(report.predicted)
      << " (primes <= " << a.prime_bound << ")\n";
  Json evidence = Json::array();
  for (const auto& e : report.evidence) {
    out << "  p = " << std::left << std::setw(4) << e.p;
    Json je{{"p", e.p}, {"divides_n", !e.predicted}};
    if (e.predicted) {
      out << "p does not divide n: multiplicative representation over GF(" << e.p << "^" << e.field_degree
          << ") " << (e.constructive_verified ? "verified" : "FAILED") << "\n";
      je["field_degree"] = e.field_degree;
      je["verified"] = e.constructive_verified;
    } else {
      out << "p divides n:";
      Json searches = Json::array();
      for (const auto& [m, o] : e.searches) {
        out << " GF(" << e.p << "^" << m << ") " << to_string(o) << ";";
        searches.push_back({{"m", m}, {"outcome", to_string(o)}});
        budget_hit = budget_hit || o == SearchOutcome::BudgetExceeded;
      }
      out << " (bounded evidence, m <= " << a.m_max << ")\n";
      je["searches"] = searches;
    }
    evidence.push_back(je);
  }
  out << (report.consistent() ? "evidence agrees with the prediction"
                              : "evidence DISAGREES with the prediction (see table)")
      << "\n";
  out << "algebraic: chi_A(L(Z_" << a.n << " K3)) = " << cited.chi_a_lift << "; chi_A(M(" << a.n
      << ")) = chi_A(L0(Z_" << a.n << " K3)) = " << cited.chi_a_mn_text << " (theorem, not computed here)\n";

  const Json doc{{"schema", kSchemaVersion},
                 {"kind", "charset"},
                 {"n", a.n},
                 {"prime_bound", a.prime_bound},
                 {"m_max", a.m_max},
                 {"predicted", report.predicted},
                 {"evidence", evidence},
                 {"consistent", report.consistent()},
                 {"algebraic", {{"lift", cited.chi_a_lift}, {"mn", cited.chi_a_mn}, {"computed", false}}}};
  write_doc(a.out, doc, out);
  return budget_hit ? kExitBudget : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harmonic-matroid geometries: constructions, derivations, certificates and representations",
               "hgeom"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Build a geometry: mn N | lift0 F | lift F");
  b->add_option("kind", build.kind, "mn, lift0 or lift")->required();
  b->add_option("param", build.param, "n for mn; comma-separated group factors for lift0/lift");
  b->add_option("--group", build.group, "Comma-separated cyclic factors, e.g. 2,2");
  b->add_option("--out", build.out, "Write the geometry document here");

  DeriveArgs derive;
  auto* d = app.add_subcommand("derive", "Run a derivation: prime-power P N | two-primes P Q | extend N | "
                                         "verdict-mn N | verdict-group F");
  d->add_option("target", derive.target, "Derivation to run")->required();
  d->add_option("params", derive.params, "Target parameters");
  d->add_option("--out", derive.out, "Write the trace document (or representation) here");
  d->add_option("--geometry-out", derive.geometry_out, "extend: write the extended geometry here");
  d->add_option("--budget", derive.budget, std::string("Rule-application budget (default: $") + kBudgetVariable +
                                               " or " + std::to_string(kDefaultBudget) + ")");
  d->add_flag("--show", derive.show, "Print the derivation tree");

  std::string check_path;
  auto* c = app.add_subcommand("check", "Replay a trace document independently");
  c->add_option("trace", check_path, "Trace document")->required();

  LinrepArgs linrep;
  auto* l = app.add_subcommand("linrep", "Linear representations: <path | mn N | lift F | lift0 F>");
  l->add_option("target", linrep.target, "Geometry path or construction")->required();
  l->add_option("--field", linrep.field, "p or p,m for GF(p^m)")->required();
  l->add_flag("--search", linrep.search, "Exhaustive backtracking search over PG(2,q)");
  l->add_flag("--explicit", linrep.explicit_rep, "Verify the explicit additive/multiplicative family");
  l->add_option("--budget", linrep.budget, "Search budget (candidate placements)");
  l->add_option("--out", linrep.out, "Write the representation document here");

  CharsetArgs charset;
  auto* s = app.add_subcommand("charset", "Characteristic-set evidence for lift(Z_n)");
  s->add_option("n", charset.n, "n >= 2")->required();
  s->add_option("--prime-bound", charset.prime_bound, "Largest prime examined")->capture_default_str();
  s->add_option("--m-max", charset.m_max, "Largest extension degree searched for p | n")->capture_default_str();
  s->add_option("--budget", charset.budget, "Search budget per field");
  s->add_option("--out", charset.out, "Write the JSON report here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (b->parsed()) return cmd_build(build, out);
    if (d->parsed()) return cmd_derive(derive, out);
    if (c->parsed()) return cmd_check(check_path, out);
    if (l->parsed()) return cmd_linrep(linrep, out);
    if (s->parsed()) return cmd_charset(charset, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DocumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hgeom
