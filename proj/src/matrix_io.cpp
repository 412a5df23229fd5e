#include "opgeom/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace opgeom {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double to_finite_double(const nlohmann::json& j, const char* what) {
    if (!j.is_number()) throw std::invalid_argument(std::string("matrix JSON: ") + what + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw std::invalid_argument(std::string("matrix JSON: ") + what + " must be finite");
    return v;
}

}  // namespace

ComplexMatrix parse_matrix_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("matrix JSON: parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw std::invalid_argument("matrix JSON: expected an object with \"n\" and \"entries\"");
    if (!j["n"].is_number_integer())
        throw std::invalid_argument("matrix JSON: \"n\" must be an integer");
    const long long n = j["n"].get<long long>();
    if (n < 1) throw std::invalid_argument("matrix JSON: n must be >= 1");
    const auto& rows = j["entries"];
    if (!rows.is_array() || static_cast<long long>(rows.size()) != n)
        throw std::invalid_argument("matrix JSON: entries must hold n rows");
    MatrixXc m(n, n);
    for (long long i = 0; i < n; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || static_cast<long long>(row.size()) != n)
            throw std::invalid_argument("matrix JSON: matrix must be square");
        for (long long k = 0; k < n; ++k) {
            const auto& cell = row[k];
            if (!cell.is_array() || cell.size() != 2)
                throw std::invalid_argument("matrix JSON: each entry must be [re, im]");
            m(i, k) = Complex(to_finite_double(cell[0], "re"), to_finite_double(cell[1], "im"));
        }
    }
    return ComplexMatrix(std::move(m));
}

ComplexMatrix parse_matrix_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                throw std::invalid_argument("matrix CSV: unparsable cell '" + cell + "'");
            }
            if (cell.find_first_not_of(" \t\r", pos) != std::string::npos)
                throw std::invalid_argument("matrix CSV: trailing junk in cell '" + cell + "'");
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    if (n == 0) throw std::invalid_argument("matrix CSV: empty input");
    MatrixXc m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != 2 * n)
            throw std::invalid_argument("matrix CSV: row " + std::to_string(i) + " has " +
                                        std::to_string(rows[i].size()) + " values, expected " +
                                        std::to_string(2 * n) + " (matrix must be square)");
        for (std::size_t k = 0; k < n; ++k) m(i, k) = Complex(rows[i][2 * k], rows[i][2 * k + 1]);
    }
    return ComplexMatrix(std::move(m));
}

std::string matrix_to_json(const ComplexMatrix& m) {
    const Eigen::Index n = m.dim();
    std::string out = "{\"n\": " + std::to_string(n) + ", \"entries\": [";
    for (Eigen::Index i = 0; i < n; ++i) {
        out += i ? ",\n  [" : "\n  [";
        for (Eigen::Index k = 0; k < n; ++k) {
            if (k) out += ", ";
            out += "[" + fmt17(m.mat()(i, k).real()) + ", " + fmt17(m.mat()(i, k).imag()) + "]";
        }
        out += "]";
    }
    out += "\n]}\n";
    return out;
}

std::string matrix_to_csv(const ComplexMatrix& m) {
    const Eigen::Index n = m.dim();
    std::string out;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < n; ++k) {
            if (k) out += ",";
            out += fmt17(m.mat()(i, k).real()) + "," + fmt17(m.mat()(i, k).imag());
        }
        out += "\n";
    }
    return out;
}

ComplexMatrix load_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return parse_matrix_csv(text);
    return parse_matrix_json(text);
}

void save_matrix_json(const ComplexMatrix& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write matrix file: " + path);
    out << matrix_to_json(m);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace opgeom
