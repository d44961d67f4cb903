#ifndef KCLUST_CSV_HPP
#define KCLUST_CSV_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "kclust/partition.hpp"

namespace kclust {

// Shortest round-trip decimal form of a double (17 significant digits),
// so that a written value re-reads to the identical bit pattern.
std::string format_real(double v);

// Dataset with an optional planted label column.
struct Dataset {
    Eigen::MatrixXd points;  // n x d
    std::optional<Partition> labels;
};

// Reads a dataset CSV with header x1,...,xd or x1,...,xd,label.  Labels must
// be the contiguous integers 1..K; they are stored 0-based.  Malformed input
// raises io_error.
Dataset read_dataset_csv(const std::string& path);

// Writes a dataset CSV in the same schema (labels written 1-based).
void write_dataset_csv(const std::string& path, const Eigen::MatrixXd& points,
                       const Partition* labels = nullptr);

// Appends result rows to a CSV file: creates the file with the header when
// absent or empty, otherwise verifies that the existing header matches
// before appending (mismatch raises io_error).
void append_result_rows(const std::string& path, const std::string& header,
                        const std::vector<std::string>& rows);

}  // namespace kclust

#endif  // KCLUST_CSV_HPP
