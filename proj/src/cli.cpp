#include "logcft/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <future>
#include <optional>
#include <sstream>

#include "logcft/arith.hpp"
#include "logcft/class_data.hpp"
#include "logcft/defect.hpp"
#include "logcft/errors.hpp"
#include "logcft/galois.hpp"
#include "logcft/hasse.hpp"
#include "logcft/logramif.hpp"

namespace logcft::cli {

using json = nlohmann::ordered_json;
using arith::i64;

namespace {

enum class Format { Human, Json, Tsv };

struct RunConfig {
  i64 ell = 2;
  int precision = kDefaultPrecision;
  std::string quad;
  i64 modulus = 0;
  std::string gens;
  std::string format = "human";
  // command-specific
  std::string alpha, place, family, class_data = "bundled", quad_range;
  i64 prime = 0;
};

std::vector<i64> parse_int_list(const std::string& s, const char* what) {
  std::vector<i64> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stoll(item, &pos));
      if (pos != item.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError(std::string("malformed integer '") + item + "' in " + what);
    }
  }
  return out;
}

AbelianExtension build_extension(const RunConfig& c) {
  bool has_quad = !c.quad.empty();
  bool has_mod = c.modulus != 0;
  if (has_quad == has_mod) throw InputError("give exactly one of --quad or --modulus");
  if (has_quad) {
    if (c.ell != 2) throw InputError("--quad describes 2-extensions; use --ell 2");
    return AbelianExtension::from_quadratic_generators(parse_int_list(c.quad, "--quad"));
  }
  return AbelianExtension::from_subgroup(c.modulus, parse_int_list(c.gens, "--gens"), c.ell);
}

json extension_json(const AbelianExtension& ext) {
  json j;
  j["description"] = ext.description();
  j["ell"] = ext.ell();
  j["modulus"] = ext.modulus();
  j["degree"] = ext.degree();
  j["ramify_infinity"] = ext.ramifies_at_infinity();
  j["cyclic"] = ext.is_cyclic();
  return j;
}

json element_json(const GaloisElement& g) { return g.representative(); }

json family_json(const SymbolFamily& f) {
  json j = json::object();
  for (auto& [v, g] : f.values()) j[v.to_string()] = element_json(g);
  return j;
}

json primes_json(const std::vector<i64>& xs) {
  json j = json::array();
  for (i64 x : xs) j.push_back(x);
  return j;
}

std::string scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array() && (v.empty() || !v[0].is_object())) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + scalar(v[i]);
    return s + "}";
  }
  return v.dump();
}

void render_human(const json& doc, std::ostream& out) {
  out << doc["command"].get<std::string>() << "\n";
  for (auto& [k, v] : doc["results"].items()) {
    if (v.is_array() && !v.empty() && v[0].is_object()) {
      out << k << ":\n";
      std::vector<std::string> cols;
      for (auto& [ck, cv] : v[0].items()) cols.push_back(ck);
      out << " ";
      for (auto& c : cols) out << " " << c;
      out << "\n";
      for (auto& row : v) {
        out << " ";
        for (auto& c : cols) out << " " << scalar(row[c]);
        out << "\n";
      }
    } else {
      out << k << ": " << scalar(v) << "\n";
    }
  }
}

void render_tsv(const json& doc, std::ostream& out) {
  const json& res = doc["results"];
  // A single table renders as rows; otherwise key/value lines.
  for (auto& [k, v] : res.items()) {
    if (v.is_array() && (v.empty() || v[0].is_object())) {
      if (v.empty()) return;
      std::vector<std::string> cols;
      for (auto& [ck, cv] : v[0].items()) cols.push_back(ck);
      for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "\t" : "") << cols[i];
      out << "\n";
      for (auto& row : v) {
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "\t" : "") << scalar(row[cols[i]]);
        out << "\n";
      }
      return;
    }
  }
  for (auto& [k, v] : res.items()) out << k << "\t" << scalar(v) << "\n";
}

json ramification_rows(const AbelianExtension& ext) {
  json rows = json::array();
  for (auto& r : ramification_table(ext))
    rows.push_back({{"place", r.place.to_string()}, {"e", r.e}, {"f", r.f}, {"g", r.g},
                    {"e_tilde", r.e_tilde}, {"f_tilde", r.f_tilde}});
  return rows;
}

const char* status_name(GlobalStatus s) {
  switch (s) {
    case GlobalStatus::Proven: return "global norm";
    case GlobalStatus::Refuted: return "not a local norm";
    case GlobalStatus::Unproven: return "local norm everywhere, global status unproven";
  }
  return "";
}

json scan_row(i64 d) {
  auto ext = AbelianExtension::from_quadratic_generators({d});
  auto ram = log_ramified_primes(ext);
  auto cond = log_conductor(ext);
  auto idx = unit_norm_index(ext);
  json row;
  row["d"] = d;
  row["log_ramified"] = primes_json(ram);
  json sup = json::array();
  for (i64 p : cond.support()) sup.push_back(std::to_string(p));
  if (cond.infinite) sup.push_back("inf");
  row["conductor_support"] = sup;
  row["gamma_hat"] = hat_gamma(ext).order();
  row["unit_index"] = idx.exact() ? std::to_string(idx.lower)
                                  : "[" + std::to_string(idx.lower) + "," + std::to_string(idx.upper) + "]";
  row["cyclotomic_index"] = cyclotomic_index(ext);
  return row;
}

std::pair<i64, i64> parse_range(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw InputError("--quad-range expects lo:hi");
  auto lo = parse_int_list(s.substr(0, colon), "--quad-range");
  auto hi = parse_int_list(s.substr(colon + 1), "--quad-range");
  if (lo.size() != 1 || hi.size() != 1) throw InputError("--quad-range expects lo:hi");
  if (hi[0] - lo[0] > 100000) throw InputError("--quad-range is limited to 100000 values");
  return {lo[0], hi[0]};
}

int execute(const std::string& cmd, RunConfig& c, std::ostream& out, std::ostream& err) {
  json doc;
  doc["command"] = cmd;
  json inputs;
  inputs["ell"] = c.ell;
  json warnings = json::array();
  auto warn = [&](const std::string& w) {
    warnings.push_back(w);
    err << "warning: " << w << "\n";
  };
  json results;
  int code = 0;

  if (cmd == "scan") {
    auto [lo, hi] = parse_range(c.quad_range);
    inputs["quad_range"] = c.quad_range;
    inputs["precision"] = c.precision;
    std::vector<i64> ds;
    for (i64 d = lo; d <= hi; ++d)
      if (d != 0 && d != 1 && arith::is_squarefree(d)) ds.push_back(d);
    // Rows are computed concurrently and emitted in input order.
    std::vector<json> done(ds.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> workers;
    unsigned n = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    for (unsigned w = 0; w < n; ++w)
      workers.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i; (i = next++) < ds.size();) done[i] = scan_row(ds[i]);
      }));
    for (auto& w : workers) w.get();
    json rows = json::array();
    for (auto& r : done) rows.push_back(std::move(r));
    results["rows"] = rows;
  } else {
    if (c.ell < 2 || !arith::is_prime(c.ell)) throw InputError("--ell must be a prime");
    AbelianExtension ext = build_extension(c);
    int need = minimum_precision(ext);
    if (c.precision < need) {
      warn("precision raised from " + std::to_string(c.precision) + " to " + std::to_string(need));
      c.precision = need;
    }
    const int k = c.precision;
    inputs["precision"] = k;
    inputs["extension"] = extension_json(ext);

    if (cmd == "ramification") {
      results["degree"] = ext.degree();
      results["log_ramified"] = primes_json(log_ramified_primes(ext));
      results["rows"] = ramification_rows(ext);
    } else if (cmd == "conductor") {
      auto cond = log_conductor(ext);
      json ex = json::object();
      for (auto& [p, n] : cond.exponents) ex[std::to_string(p)] = n;
      results["finite_exponents"] = ex;
      results["support"] = primes_json(cond.support());
      results["infinite"] = cond.infinite;
      results["classical_conductor"] = ext.conductor();
    } else if (cmd == "frobenius") {
      inputs["prime"] = c.prime;
      auto g = log_frobenius(ext, c.prime);
      results["element"] = element_json(g);
      results["order"] = g.order();
    } else if (cmd == "symbol") {
      RationalNonzero alpha = RationalNonzero::parse(c.alpha);
      Place v = Place::parse(c.place);
      inputs["alpha"] = alpha.to_string();
      inputs["place"] = v.to_string();
      auto g = hasse_symbol(alpha, v, ext, k);
      results["result"] = g.is_identity() ? "trivial" : "nontrivial";
      results["element"] = element_json(g);
      results["order"] = g.order();
      results["local_norm"] = is_local_norm(alpha, v, ext);
      if (g.is_identity() != is_local_norm(alpha, v, ext))
        throw InconsistencyError("symbol triviality disagrees with the local norm test");
    } else if (cmd == "family" || cmd == "product-check") {
      RationalNonzero alpha = RationalNonzero::parse(c.alpha);
      inputs["alpha"] = alpha.to_string();
      auto f = symbol_family(alpha, ext, k);
      results["family"] = family_json(f);
      results["product"] = element_json(f.product());
      if (cmd == "product-check") {
        bool holds = f.product().is_identity();
        results["holds"] = holds;
        if (!holds) code = 3;
      }
    } else if (cmd == "realize") {
      SymbolFamily target = SymbolFamily::parse(c.family, ext);
      inputs["family"] = target.to_string();
      auto alpha = realize_family(target, k);
      results["alpha"] = alpha.to_string();
      results["rational"] = alpha.as_rational().has_value();
      bool prime = true;
      auto d = psi_divisor(alpha);
      for (i64 q : log_ramified_primes(ext)) prime = prime && d.exponent(q).is_zero();
      results["prime_to_conductor"] = prime;
      results["verified"] = true;
    } else if (cmd == "defect") {
      inputs["class_data"] = c.class_data;
      auto records = c.class_data == "bundled" ? bundled_class_data() : load_class_data(c.class_data);
      auto cd = find_class_data(records, ext);
      if (!cd) throw InputError("no class data record matches " + ext.description());
      auto idx = unit_norm_index(ext);
      json st = json::array();
      for (auto& s : idx.statuses) {
        json row{{"unit", s.unit.to_string()}, {"status", status_name(s.global)}};
        if (s.certificate) {
          MultiquadraticField field(*ext.quadratic_generators());
          row["certificate"] = field.format(s.certificate->element);
        }
        st.push_back(row);
      }
      results["gamma_hat"] = hat_gamma(ext).order();
      if (!idx.exact()) {
        warn("unit norm index only bounded: [" + std::to_string(idx.lower) + ", " + std::to_string(idx.upper) + "]");
        results["unit_index"] = json::array({idx.lower, idx.upper});
        results["class_index"] = cd->class_star_vs_augmentation;
        results["defect"] = nullptr;
      } else {
        auto rep = defect_formula(ext, *cd, idx.lower);
        results["unit_index"] = rep.unit_norm_index;
        results["class_index"] = rep.class_index;
        results["defect"] = rep.defect;
      }
      results["provenance"] = cd->provenance;
      results["units"] = st;
    } else {
      throw InputError("unknown command " + cmd);
    }
  }

  doc["inputs"] = inputs;
  doc["results"] = results;
  doc["warnings"] = warnings;
  if (c.format == "json")
    out << doc.dump(2) << "\n";
  else if (c.format == "tsv")
    render_tsv(doc, out);
  else
    render_human(doc, out);
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  if (const char* env = std::getenv(kPrecisionEnv)) {
    try {
      c.precision = std::stoi(env);
    } catch (const std::exception&) {
      err << "error: " << kPrecisionEnv << " must be an integer\n";
      return 2;
    }
  }
  CLI::App app{"Logarithmic class field theory over Q"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub, bool extension = true) {
    sub->add_option("--ell", c.ell, "the prime l")->capture_default_str();
    sub->add_option("--precision", c.precision, std::string("l-adic digits (default from ") + kPrecisionEnv + ")")
        ->capture_default_str();
    sub->add_option("--format", c.format, "human | json | tsv")
        ->check(CLI::IsMember({"human", "json", "tsv"}))
        ->capture_default_str();
    if (extension) {
      sub->add_option("--quad", c.quad, "quadratic generators d1,d2,... (l = 2)");
      sub->add_option("--modulus", c.modulus, "modulus m of the character data");
      sub->add_option("--gens", c.gens, "generators of H in (Z/m)^x");
    }
  };
  auto* ram = app.add_subcommand("ramification", "classical and logarithmic ramification per place");
  common(ram);
  auto* cond = app.add_subcommand("conductor", "logarithmic conductor");
  common(cond);
  auto* frob = app.add_subcommand("frobenius", "logarithmic Frobenius at a prime");
  common(frob);
  frob->add_option("--prime", c.prime, "log-unramified prime")->required();
  auto* sym = app.add_subcommand("symbol", "logarithmic Hasse symbol");
  common(sym);
  sym->add_option("--alpha", c.alpha, "nonzero rational a or a/b")->required();
  sym->add_option("--place", c.place, "prime or inf")->required();
  auto* fam = app.add_subcommand("family", "symbols of alpha at every place");
  common(fam);
  fam->add_option("--alpha", c.alpha)->required();
  auto* prod = app.add_subcommand("product-check", "check the product formula for alpha");
  common(prod);
  prod->add_option("--alpha", c.alpha)->required();
  auto* real = app.add_subcommand("realize", "find alpha with prescribed symbols");
  common(real);
  real->add_option("--family", c.family,
                   "place=element pairs, e.g. 2=3,inf=3; elements are representatives mod m")
      ->required();
  auto* def = app.add_subcommand("defect", "defect of the l-adic Hasse principle");
  common(def);
  def->add_option("--class-data", c.class_data, "'bundled' or a class-data file")->capture_default_str();
  auto* scan = app.add_subcommand("scan", "batch over quadratic fields (l = 2)");
  common(scan, false);
  scan->add_option("--quad-range", c.quad_range, "lo:hi range of squarefree d")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  CLI::App* chosen = app.get_subcommands().front();
  std::string cmd = chosen->get_name();
  if (cmd == "scan" && chosen->count("--format") == 0) c.format = "tsv";
  if (cmd == "scan" && c.ell != 2) {
    err << "error: scan runs over quadratic fields; use --ell 2\n";
    return 2;
  }
  try {
    return execute(cmd, c, out, err);
  } catch (const InconsistencyError& e) {
    err << "inconsistency: " << e.what() << "\n";
    return 3;
  } catch (const SearchExhausted& e) {
    err << "search exhausted: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace logcft::cli
