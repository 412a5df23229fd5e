#pragma once

#include <string>
#include <vector>

#include "opgeom/types.hpp"

namespace opgeom {

/// One check outcome inside a verification run. Rows are emitted ordered by
/// (instance_id, check_name); numbers are serialized with 17 significant
/// digits so reports are byte-identical for a fixed seed. wall_time_ms is 0
/// unless timing collection was explicitly enabled (real timings would break
/// byte-identity across runs).
struct ReportRow {
    int instance_id = 0;
    std::string check_name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    std::string verdict;
    std::string witness_digest;
    double wall_time_ms = 0.0;
};

/// 17-significant-digit formatting shared by every emitter.
std::string format_double17(double v);

/// FNV-1a over the little-endian bytes of the interleaved (re, im) doubles.
std::string witness_digest(const VectorXc& v);

void sort_rows(std::vector<ReportRow>& rows);

std::string rows_to_csv(const std::vector<ReportRow>& rows);
std::string rows_to_json(const std::vector<ReportRow>& rows);

enum class ReportFormat { csv, json };

/// Throws std::runtime_error on I/O failure.
void write_report(const std::vector<ReportRow>& rows, ReportFormat format,
                  const std::string& path);

}  // namespace opgeom
