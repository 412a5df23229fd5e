#include "opgeom/report.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace opgeom {

std::string format_double17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string witness_digest(const VectorXc& v) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](double d) {
        std::uint64_t bits;
        std::memcpy(&bits, &d, sizeof(bits));
        for (int k = 0; k < 8; ++k) {
            h ^= (bits >> (8 * k)) & 0xFF;
            h *= 0x100000001b3ULL;
        }
    };
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        feed(v[i].real());
        feed(v[i].imag());
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void sort_rows(std::vector<ReportRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
        if (a.instance_id != b.instance_id) return a.instance_id < b.instance_id;
        return a.check_name < b.check_name;
    });
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
    std::string out = "instance_id,check_name,lhs,rhs,margin,verdict,witness_digest,wall_time_ms\n";
    for (const ReportRow& r : rows) {
        out += std::to_string(r.instance_id);
        out += ',';
        out += csv_escape(r.check_name);
        out += ',';
        out += format_double17(r.lhs);
        out += ',';
        out += format_double17(r.rhs);
        out += ',';
        out += format_double17(r.margin);
        out += ',';
        out += r.verdict;
        out += ',';
        out += r.witness_digest;
        out += ',';
        out += format_double17(r.wall_time_ms);
        out += '\n';
    }
    return out;
}

std::string rows_to_json(const std::vector<ReportRow>& rows) {
    std::string out = "[";
    bool first = true;
    for (const ReportRow& r : rows) {
        out += first ? "\n" : ",\n";
        first = false;
        out += "  {\"instance_id\": " + std::to_string(r.instance_id);
        out += ", \"check_name\": \"" + json_escape(r.check_name) + "\"";
        out += ", \"lhs\": " + format_double17(r.lhs);
        out += ", \"rhs\": " + format_double17(r.rhs);
        out += ", \"margin\": " + format_double17(r.margin);
        out += ", \"verdict\": \"" + r.verdict + "\"";
        out += ", \"witness_digest\": \"" + r.witness_digest + "\"";
        out += ", \"wall_time_ms\": " + format_double17(r.wall_time_ms);
        out += "}";
    }
    out += "\n]\n";
    return out;
}

void write_report(const std::vector<ReportRow>& rows, ReportFormat format,
                  const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open report file for writing: " + path);
    out << (format == ReportFormat::csv ? rows_to_csv(rows) : rows_to_json(rows));
    out.flush();
    if (!out) throw std::runtime_error("report write failed: " + path);
}

}  // namespace opgeom
