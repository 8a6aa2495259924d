#include "isocount/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace isocount {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string coords_str(const IVec& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string snorm_str(const EnumRecord& r) {
  return r.exact ? r.snorm_sq_exact.get_str() : fmt_double(r.snorm_sq);
}

void echo_comment(std::ostream& os, const std::string& echo) {
  if (!echo.empty()) os << "# config " << echo << "\n";
}

}  // namespace

void write_records_csv(std::ostream& os, const std::vector<EnumRecord>& recs,
                       const std::string& config_echo) {
  echo_comment(os, config_echo);
  const int r = recs.empty() ? 3 : static_cast<int>(recs[0].dir.size());
  os << "vector,snorm_sq,hitting_time";
  for (int i = 1; i <= r; ++i) os << ",dir" << i;
  os << ",boundary_uncertain\n";
  for (const EnumRecord& rec : recs) {
    os << coords_str(rec.coords) << ',' << snorm_str(rec) << ','
       << fmt_double(rec.hitting_time);
    for (double d : rec.dir) os << ',' << fmt_double(d);
    os << ',' << (rec.boundary_uncertain ? 1 : 0) << '\n';
  }
}

void write_records_jsonl(std::ostream& os, const std::vector<EnumRecord>& recs,
                         const std::string& config_echo) {
  if (!config_echo.empty()) {
    nlohmann::json head;
    head["config"] = nlohmann::json::parse(config_echo, nullptr, false);
    os << head.dump() << "\n";
  }
  for (const EnumRecord& rec : recs) {
    nlohmann::json j;
    j["vector"] = rec.coords;
    if (rec.exact)
      j["snorm_sq"] = rec.snorm_sq_exact.get_str();
    else
      j["snorm_sq"] = rec.snorm_sq;
    j["hitting_time"] = rec.hitting_time;
    j["dir"] = rec.dir;
    j["boundary_uncertain"] = rec.boundary_uncertain;
    os << j.dump() << "\n";
  }
}

void write_count_table_csv(std::ostream& os, const CountTable& table,
                           const ExponentFit* fit,
                           const std::string& config_echo) {
  echo_comment(os, config_echo);
  os << "# mode " << (table.exact_mode ? "exact" : "float") << "\n";
  os << "# exponent_expected " << table.exponent_expected << "\n";
  os << "# error_term_delta " << table.error_term_delta.get_str() << "\n";
  os << "# plane " << table.plane_desc << "\n";
  os << "V,N,boundary_uncertain,logV,logN,fitted_slope\n";
  for (size_t i = 0; i < table.thresholds.size(); ++i) {
    double v = table.thresholds[i].get_d();
    os << table.thresholds[i].get_str() << ',' << table.counts[i] << ','
       << table.uncertain[i] << ',' << fmt_double(std::log(v)) << ','
       << (table.counts[i] > 0
               ? fmt_double(std::log(static_cast<double>(table.counts[i])))
               : std::string("nan"))
       << ',' << (fit ? fmt_double(fit->slope) : std::string("")) << '\n';
  }
  if (fit)
    os << "# fit slope " << fmt_double(fit->slope) << " stderr "
       << fmt_double(fit->stderr_slope) << " points " << fit->points << "\n";
}

nlohmann::json count_table_json(const CountTable& table, const ExponentFit* fit) {
  nlohmann::json j;
  j["mode"] = table.exact_mode ? "exact" : "float";
  j["exponent_expected"] = table.exponent_expected;
  j["error_term_delta"] = table.error_term_delta.get_str();
  j["plane"] = nlohmann::json::parse(table.plane_desc, nullptr, false);
  j["sphere_measure"] = "unit total measure";
  nlohmann::json rows = nlohmann::json::array();
  for (size_t i = 0; i < table.thresholds.size(); ++i) {
    nlohmann::json row;
    row["V"] = table.thresholds[i].get_str();
    row["N"] = table.counts[i];
    row["boundary_uncertain"] = table.uncertain[i];
    rows.push_back(row);
  }
  j["rows"] = rows;
  if (fit) {
    j["fit"] = {{"slope", fit->slope},
                {"stderr", fit->stderr_slope},
                {"points", fit->points}};
    if (!table.thresholds.empty() && table.counts.back() > 0) {
      double vmax = table.thresholds.back().get_d();
      double chat = static_cast<double>(table.counts.back()) /
                    std::pow(vmax, table.exponent_expected);
      j["c_hat_at_vmax"] = chat;
    }
  }
  return j;
}

void write_weyl_csv(std::ostream& os, const std::vector<Rat>& thresholds,
                    const WeylWeightAccumulator& acc,
                    const std::string& config_echo) {
  echo_comment(os, config_echo);
  os << "V,l,m,weyl_normalized,N,boundary_uncertain\n";
  for (size_t t = 0; t < thresholds.size(); ++t) {
    for (const WeylRow& row : acc.weyl(t))
      os << thresholds[t].get_str() << ',' << row.l << ',' << row.m << ','
         << fmt_double(row.normalized) << ',' << acc.count(t) << ','
         << acc.uncertain(t) << '\n';
  }
}

void write_point_dump(std::ostream& os, const std::vector<EnumRecord>& recs,
                      const std::string& config_echo) {
  echo_comment(os, config_echo);
  os << "lon,lat,V\n";
  for (const EnumRecord& rec : recs) {
    if (rec.dir.size() != 3)
      throw PreconditionError("point dump needs S^2 directions");
    double lon = std::atan2(rec.dir[1], rec.dir[0]);
    double lat = std::asin(std::clamp(rec.dir[2], -1.0, 1.0));
    os << fmt_double(lon) << ',' << fmt_double(lat) << ','
       << fmt_double(std::sqrt(rec.snorm_sq)) << '\n';
  }
}

nlohmann::json isometry_json(const Isometry& g) {
  nlohmann::json j;
  nlohmann::json m = nlohmann::json::array();
  for (int i = 0; i < g.matrix.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < g.matrix.cols; ++k) row.push_back(g.matrix(i, k).get_str());
    m.push_back(row);
  }
  j["matrix"] = m;
  nlohmann::json prov = nlohmann::json::array();
  for (const GenStep& s : g.provenance) {
    nlohmann::json e;
    switch (s.kind) {
      case GenStep::Kind::transvection: {
        e["kind"] = "transvection";
        std::vector<std::string> f, a;
        for (const Int& x : s.f) f.push_back(x.get_str());
        for (const Int& x : s.a) a.push_back(x.get_str());
        e["f"] = f;
        e["a"] = a;
        break;
      }
      case GenStep::Kind::negate_u1:
        e["kind"] = "negate_u1";
        break;
      case GenStep::Kind::swap_u1:
        e["kind"] = "swap_u1";
        break;
    }
    prov.push_back(e);
  }
  j["provenance"] = prov;
  return j;
}

nlohmann::json splitting_json(const SplittingCertificate& cert) {
  nlohmann::json j;
  auto zvec = [](const ZVec& v) {
    std::vector<std::string> out;
    for (const Int& x : v) out.push_back(x.get_str());
    return out;
  };
  j["w"] = zvec(cert.w);
  j["x"] = zvec(cert.x);
  j["x1"] = zvec(cert.x1);
  j["k"] = cert.k.get_str();
  nlohmann::json gram = nlohmann::json::array();
  for (int i = 0; i < cert.complement_gram.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < cert.complement_gram.cols; ++k)
      row.push_back(cert.complement_gram(i, k));
    gram.push_back(row);
  }
  j["complement_gram"] = gram;
  j["complement_even_unimodular"] = cert.complement_even_unimodular;
  j["complement_inertia"] = {cert.complement_inertia.pos,
                             cert.complement_inertia.zero,
                             cert.complement_inertia.neg};
  return j;
}

nlohmann::json constant_report_json(const ConstantReport& rep) {
  nlohmann::json j;
  for (const auto& [s, z] : rep.zeta_values)
    j["zeta"][std::to_string(s)] = {{"value", z.value}, {"bound", z.bound}};
  nlohmann::json lv = nlohmann::json::array();
  for (const auto& [p, v] : rep.local_volumes)
    lv.push_back({{"p", p}, {"volume", v}});
  j["local_volumes"] = lv;
  j["truncated_product"] = rep.truncated_product;
  j["truncation_bound"] = rep.truncation_bound;
  j["prime_cutoff"] = rep.prime_cutoff;
  j["family_value"] = rep.family_value;
  j["family"] = "(pi^20 zeta(11))^-1 times an undetermined rational";
  j["fitted_c"] = rep.fitted_c;
  j["fitted_c_stderr"] = rep.fitted_c_stderr;
  j["fitted_ratio"] = rep.fitted_ratio;
  j["fitted_ratio_stderr"] = rep.fitted_ratio_stderr;
  j["degenerate"] = rep.degenerate;
  j["note"] = "fitted_ratio is an empirical rational-factor candidate only";
  return j;
}

nlohmann::json k3_report_json(const K3Report& rep, bool include_records) {
  nlohmann::json j;
  const char* status = nullptr;
  switch (rep.status) {
    case GenericityStatus::generic_up_to_bound: status = "generic_up_to_bound"; break;
    case GenericityStatus::non_generic: status = "non_generic"; break;
    case GenericityStatus::inconclusive: status = "inconclusive"; break;
    case GenericityStatus::unverified_float: status = "unverified_float"; break;
  }
  j["summary"] = {
      {"n_elliptic", rep.n_elliptic},
      {"n_slag", rep.n_slag},
      {"boundary_uncertain", rep.boundary_uncertain},
      {"genericity_status", status},
      {"genericity_bound", rep.genericity_bound},
      {"witnesses_found", rep.witnesses_found},
      {"singular_fibers_with_multiplicity",
       K3Report::kSingularFibersWithMultiplicity}};
  if (rep.status == GenericityStatus::non_generic)
    j["summary"]["disclaimer"] =
        "plane is not generic: geometric labels may overcount; the lattice "
        "count itself is unconditional";
  if (include_records) {
    nlohmann::json ell = nlohmann::json::array();
    for (const FibrationRecord& f : rep.elliptic) {
      nlohmann::json e;
      e["class"] = f.fiber_class;
      e["pole_lon"] = std::atan2(f.pole[1], f.pole[0]);
      e["pole_lat"] = std::asin(std::clamp(f.pole[2], -1.0, 1.0));
      e["volume"] = f.volume;
      if (f.boundary_uncertain) e["boundary_uncertain"] = true;
      ell.push_back(e);
    }
    j["elliptic"] = ell;
    nlohmann::json sl = nlohmann::json::array();
    for (const SLagRecord& s : rep.slag) {
      nlohmann::json e;
      e["pair_representative"] = s.representative;
      e["equator_normal"] = {s.equator_normal[0], s.equator_normal[1],
                             s.equator_normal[2]};
      e["volume"] = s.volume;
      sl.push_back(e);
    }
    j["slag"] = sl;
  }
  return j;
}

}  // namespace isocount
