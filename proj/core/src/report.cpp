#include "narrframe/report.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>

#include "narrframe/error.hpp"

namespace narrframe::report {

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_double(double v, int precision) {
  // fmt never consults the global locale for these specifiers.
  return fmt::format("{:.{}f}", v, precision);
}

std::string frequency_csv(const analysis::FrequencyTable& t) {
  std::string out = "class,count,proportion\n";
  for (std::size_t i = 0; i < t.classes.size(); ++i) {
    out += csv_escape(t.classes[i]) + "," + std::to_string(t.counts[i]) + "," + format_double(t.proportions[i]) + "\n";
  }
  return out;
}

std::string contingency_csv(const analysis::ContingencyTable& t) {
  std::string out = "row,column,count,row_share,column_share,global_share\n";
  const auto rs = t.row_shares();
  const auto cs = t.column_shares();
  const auto gs = t.global_shares();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      out += csv_escape(t.rows[r]) + "," + csv_escape(t.columns[c]) + "," + std::to_string(t.counts[r][c]) + "," +
             format_double(rs[r][c]) + "," + format_double(cs[r][c]) + "," + format_double(gs[r][c]) + "\n";
    }
  }
  return out;
}

std::string contingency_matrix_csv(const analysis::ContingencyTable& t) {
  std::string out = "class";
  for (const auto& c : t.columns) out += "," + csv_escape(c);
  out += ",total,excluded\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out += csv_escape(t.rows[r]);
    for (auto v : t.counts[r]) out += "," + std::to_string(v);
    out += "," + std::to_string(t.row_totals[r]) + "," + std::to_string(t.excluded_per_row[r]) + "\n";
  }
  out += "total";
  for (auto v : t.column_totals) out += "," + std::to_string(v);
  out += "," + std::to_string(t.total) + "," + std::to_string(t.excluded) + "\n";
  return out;
}

std::string intersection_csv(const analysis::IntersectionTable& t) {
  std::string out = "narrative";
  for (const auto& g : t.generic_frames) out += "," + csv_escape(g);
  out += ",entropy\n";
  for (std::size_t r = 0; r < t.narratives.size(); ++r) {
    out += csv_escape(t.narratives[r]);
    for (auto v : t.counts[r]) out += "," + std::to_string(v);
    out += "," + format_double(t.entropy[r]) + "\n";
  }
  return out;
}

std::string per_class_csv(const metrics::ClassificationReport& r) {
  std::string out = "class,support,tp,fp,fn,precision,recall,f1\n";
  for (const auto& c : r.per_class) {
    out += csv_escape(c.label) + "," + std::to_string(c.support) + "," + std::to_string(c.true_positives) + "," +
           std::to_string(c.false_positives) + "," + std::to_string(c.false_negatives) + "," +
           format_double(c.precision) + "," + format_double(c.recall) + "," + format_double(c.f1) + "\n";
  }
  out += "macro,,,,,,," + format_double(r.macro_f1) + "\n";
  return out;
}

std::string confusion_csv(const metrics::ConfusionMatrix& m) {
  std::string out = "gold\\pred";
  for (const auto& c : m.classes) out += "," + csv_escape(c);
  out += ",FAILED\n";
  for (std::size_t r = 0; r < m.classes.size(); ++r) {
    out += csv_escape(m.classes[r]);
    for (auto v : m.counts[r]) out += "," + std::to_string(v);
    out += "\n";
  }
  return out;
}

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr int kCell = 28;
constexpr int kCharWidth = 7;

std::size_t longest(const std::vector<std::string>& v) {
  std::size_t n = 0;
  for (const auto& s : v) n = std::max(n, s.size());
  return n;
}

}  // namespace

std::string heatmap_svg(std::string_view title, const std::vector<std::string>& rows,
                        const std::vector<std::string>& columns,
                        const std::vector<std::vector<std::size_t>>& counts) {
  const int left = static_cast<int>(longest(rows)) * kCharWidth + 12;
  const int top = static_cast<int>(longest(columns)) * kCharWidth + 40;
  const int width = left + static_cast<int>(columns.size()) * kCell + 10;
  const int height = top + static_cast<int>(rows.size()) * kCell + 10;
  std::size_t peak = 0;
  for (const auto& row : counts) {
    for (auto v : row) peak = std::max(peak, v);
  }
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"monospace\" "
      "font-size=\"11\">\n<text x=\"4\" y=\"16\" font-size=\"13\">{}</text>\n",
      width, height, xml_escape(title));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const int x = left + static_cast<int>(c) * kCell + kCell / 2;
    out += fmt::format("<text x=\"{}\" y=\"{}\" transform=\"rotate(-90 {} {})\">{}</text>\n", x + 4, top - 4, x + 4,
                       top - 4, xml_escape(columns[c]));
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const int y = top + static_cast<int>(r) * kCell;
    out += fmt::format("<text x=\"4\" y=\"{}\">{}</text>\n", y + kCell / 2 + 4, xml_escape(rows[r]));
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto v = counts[r][c];
      const double share = peak ? static_cast<double>(v) / static_cast<double>(peak) : 0.0;
      const int shade = 255 - static_cast<int>(std::lround(share * 200.0));
      const int x = left + static_cast<int>(c) * kCell;
      out += fmt::format(
          "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"rgb({},{},255)\" stroke=\"#ccc\"/>"
          "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
          x, y, kCell, kCell, shade, shade, x + kCell / 2, y + kCell / 2 + 4, v);
    }
  }
  return out + "</svg>\n";
}

std::string confusion_svg(std::string_view title, const metrics::ConfusionMatrix& m) {
  auto columns = m.classes;
  columns.emplace_back("FAILED");
  return heatmap_svg(title, m.classes, columns, m.counts);
}

std::string stacked_bar_svg(std::string_view title, const analysis::ContingencyTable& t) {
  static constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
                                             "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#1f77b4", "#aec7e8",
                                             "#ffbb78", "#98df8a", "#c5b0d5", "#c49c94", "#dbdb8d"};
  constexpr int kBarWidth = 48;
  constexpr int kBarHeight = 240;
  const int top = 30;
  const int legend_x = 20 + static_cast<int>(t.columns.size()) * (kBarWidth + 16) + 20;
  const int width = legend_x + static_cast<int>(longest(t.rows)) * kCharWidth + 40;
  const int height = std::max(top + kBarHeight + 60, top + static_cast<int>(t.rows.size()) * 16 + 20);
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"monospace\" "
      "font-size=\"11\">\n<text x=\"4\" y=\"16\" font-size=\"13\">{}</text>\n",
      width, height, xml_escape(title));
  const auto shares = t.column_shares();
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    const int x = 20 + static_cast<int>(c) * (kBarWidth + 16);
    double y = top + kBarHeight;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const double h = shares[r][c] * kBarHeight;
      if (h <= 0.0) continue;
      y -= h;
      out += fmt::format("<rect x=\"{}\" y=\"{:.2f}\" width=\"{}\" height=\"{:.2f}\" fill=\"{}\"/>\n", x, y, kBarWidth,
                         h, kPalette[r % std::size(kPalette)]);
    }
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", x + kBarWidth / 2,
                       top + kBarHeight + 16, xml_escape(t.columns[c]));
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">n={}</text>\n", x + kBarWidth / 2,
                       top + kBarHeight + 30, t.column_totals[c]);
  }
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const int y = top + static_cast<int>(r) * 16;
    out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"10\" height=\"10\" fill=\"{}\"/><text x=\"{}\" y=\"{}\">{}</text>\n",
                       legend_x, y, kPalette[r % std::size(kPalette)], legend_x + 14, y + 9, xml_escape(t.rows[r]));
  }
  return out + "</svg>\n";
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

}  // namespace narrframe::report
