#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "narrframe/analysis.hpp"
#include "narrframe/metrics/classification.hpp"

// CSV and SVG renderings of the analysis and evaluation tables. Numbers are
// printed with fixed precision independent of the locale.
namespace narrframe::report {

std::string csv_escape(std::string_view field);
std::string format_double(double v, int precision = 6);

std::string frequency_csv(const analysis::FrequencyTable& t);
// Long format: row,column,count,row_share,column_share,global_share.
std::string contingency_csv(const analysis::ContingencyTable& t);
// Wide format with margins.
std::string contingency_matrix_csv(const analysis::ContingencyTable& t);
std::string intersection_csv(const analysis::IntersectionTable& t);
std::string per_class_csv(const metrics::ClassificationReport& r);
std::string confusion_csv(const metrics::ConfusionMatrix& m);

// Self-contained SVG documents.
std::string heatmap_svg(std::string_view title, const std::vector<std::string>& rows,
                        const std::vector<std::string>& columns,
                        const std::vector<std::vector<std::size_t>>& counts);
std::string confusion_svg(std::string_view title, const metrics::ConfusionMatrix& m);
// One bar per column, stacked by row share within the column.
std::string stacked_bar_svg(std::string_view title, const analysis::ContingencyTable& t);

void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace narrframe::report
