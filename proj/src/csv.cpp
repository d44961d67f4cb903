#include "kclust/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kclust/errors.hpp"

namespace kclust {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(trim(tok));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_real(const std::string& s, const std::string& path) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw io_error("");
        return v;
    } catch (const std::exception&) {
        throw io_error("read_dataset_csv: non-numeric field '" + s + "' in " + path);
    }
}

}  // namespace

Dataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("read_dataset_csv: cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw io_error("read_dataset_csv: empty file " + path);
    const std::vector<std::string> header = split_fields(line);
    if (header.empty()) throw io_error("read_dataset_csv: empty header in " + path);

    const bool has_label = header.back() == "label";
    const int d = static_cast<int>(header.size()) - (has_label ? 1 : 0);
    if (d < 1) throw io_error("read_dataset_csv: no coordinate columns in " + path);
    for (int j = 0; j < d; ++j) {
        const std::string expect = "x" + std::to_string(j + 1);
        if (header[j] != expect)
            throw io_error("read_dataset_csv: header column " + std::to_string(j + 1) +
                           " must be " + expect + " in " + path);
    }

    std::vector<std::vector<double>> coords;
    std::vector<int> raw_labels;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split_fields(line);
        if (static_cast<int>(fields.size()) != d + (has_label ? 1 : 0))
            throw io_error("read_dataset_csv: row with " + std::to_string(fields.size()) +
                           " fields, expected " + std::to_string(d + (has_label ? 1 : 0)) +
                           " in " + path);
        std::vector<double> row(d);
        for (int j = 0; j < d; ++j) row[j] = parse_real(fields[j], path);
        coords.push_back(std::move(row));
        if (has_label) {
            const double lv = parse_real(fields[d], path);
            const int li = static_cast<int>(lv);
            if (static_cast<double>(li) != lv || li < 1)
                throw io_error("read_dataset_csv: label '" + fields[d] +
                               "' is not a positive integer in " + path);
            raw_labels.push_back(li);
        }
    }
    if (coords.empty()) throw io_error("read_dataset_csv: no data rows in " + path);

    Dataset ds;
    ds.points.resize(static_cast<int>(coords.size()), d);
    for (std::size_t i = 0; i < coords.size(); ++i)
        for (int j = 0; j < d; ++j) ds.points(static_cast<int>(i), j) = coords[i][j];

    if (has_label) {
        const int k = *std::max_element(raw_labels.begin(), raw_labels.end());
        std::vector<int> zero_based(raw_labels.size());
        std::vector<char> seen(k, 0);
        for (std::size_t i = 0; i < raw_labels.size(); ++i) {
            zero_based[i] = raw_labels[i] - 1;
            seen[zero_based[i]] = 1;
        }
        for (int c = 0; c < k; ++c)
            if (!seen[c])
                throw io_error("read_dataset_csv: labels must be contiguous 1..K, missing " +
                               std::to_string(c + 1) + " in " + path);
        ds.labels = Partition(std::move(zero_based), k);
    }
    return ds;
}

void write_dataset_csv(const std::string& path, const Eigen::MatrixXd& points,
                       const Partition* labels) {
    if (labels != nullptr && labels->n() != points.rows())
        throw std::invalid_argument("write_dataset_csv: label count mismatch");
    std::ofstream out(path);
    if (!out) throw io_error("write_dataset_csv: cannot open " + path);
    for (int j = 0; j < points.cols(); ++j) {
        if (j > 0) out << ",";
        out << "x" << (j + 1);
    }
    if (labels != nullptr) out << ",label";
    out << "\n";
    for (int i = 0; i < points.rows(); ++i) {
        for (int j = 0; j < points.cols(); ++j) {
            if (j > 0) out << ",";
            out << format_real(points(i, j));
        }
        if (labels != nullptr) out << "," << (labels->labels[i] + 1);
        out << "\n";
    }
    if (!out) throw io_error("write_dataset_csv: write failed for " + path);
}

void append_result_rows(const std::string& path, const std::string& header,
                        const std::vector<std::string>& rows) {
    bool need_header = true;
    {
        std::ifstream in(path);
        std::string first;
        if (in && std::getline(in, first)) {
            std::string stripped = first;
            if (!stripped.empty() && stripped.back() == '\r') stripped.pop_back();
            if (stripped != header)
                throw io_error("append_result_rows: header mismatch in " + path +
                               " (found '" + stripped + "')");
            need_header = false;
        }
    }
    std::ofstream out(path, std::ios::app);
    if (!out) throw io_error("append_result_rows: cannot open " + path);
    if (need_header) out << header << "\n";
    for (const std::string& row : rows) out << row << "\n";
    if (!out) throw io_error("append_result_rows: write failed for " + path);
}

}  // namespace kclust
