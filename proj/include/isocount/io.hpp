#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "isocount/counting.hpp"
#include "isocount/enumerate.hpp"
#include "isocount/k3.hpp"
#include "isocount/orbit.hpp"
#include "isocount/tamagawa.hpp"

namespace isocount {

/// Repeatable decimal formatting (round-trip precision).
std::string fmt_double(double x);

/// CSV stream of records: coordinates, seminorm^2 (exact fraction or
/// decimal), hitting time, direction, boundary flag.  `config_echo` is
/// emitted as a leading comment so every artifact names its run.
void write_records_csv(std::ostream& os, const std::vector<EnumRecord>& recs,
                       const std::string& config_echo);
void write_records_jsonl(std::ostream& os, const std::vector<EnumRecord>& recs,
                         const std::string& config_echo);

void write_count_table_csv(std::ostream& os, const CountTable& table,
                           const ExponentFit* fit,
                           const std::string& config_echo);
nlohmann::json count_table_json(const CountTable& table, const ExponentFit* fit);

/// (l, m, |S_lm|/N) rows per threshold.
void write_weyl_csv(std::ostream& os, const std::vector<Rat>& thresholds,
                    const WeylWeightAccumulator& acc,
                    const std::string& config_echo);

/// Longitude/latitude/volume dump for external plotting.
void write_point_dump(std::ostream& os, const std::vector<EnumRecord>& recs,
                      const std::string& config_echo);

nlohmann::json isometry_json(const Isometry& g);
nlohmann::json splitting_json(const SplittingCertificate& cert);
nlohmann::json constant_report_json(const ConstantReport& rep);
nlohmann::json k3_report_json(const K3Report& rep, bool include_records = true);

}  // namespace isocount
