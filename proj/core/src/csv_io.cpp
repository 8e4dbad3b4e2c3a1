#include "ivord/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "ivord/error.hpp"

namespace ivord {
namespace {

std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    const auto cell = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
    cells.emplace_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string location(std::size_t row, const std::string& column) {
  return "row " + std::to_string(row) + ", column '" + column + "'";
}

double parse_real(const std::string& cell, std::size_t row, const std::string& column) {
  if (cell.empty()) fail(ErrorCode::SchemaError, "missing value at " + location(row, column));
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    fail(ErrorCode::SchemaError, "bad number '" + cell + "' at " + location(row, column));
  }
  return value;
}

int parse_label(const std::string& cell, std::size_t row) {
  if (cell.empty()) fail(ErrorCode::SchemaError, "missing value at " + location(row, "label"));
  int value = 0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || value < 1) {
    fail(ErrorCode::SchemaError, "label must be a positive integer at " + location(row, "label"));
  }
  return value;
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Interval checked_interval(double lo, double hi, std::size_t row) {
  if (lo > hi) {
    fail(ErrorCode::SchemaError, "lower exceeds upper at row " + std::to_string(row));
  }
  return {lo, hi};
}

void finish_labels(LabeledDataset& data) {
  if (data.has_labels()) {
    data.num_classes = *std::max_element(data.labels.begin(), data.labels.end());
  }
}

LabeledDataset read_ivd(std::istream& in, const std::vector<std::string>& header) {
  const bool labeled = header.size() > 1 && header[1] == "label";
  const std::size_t first_feature = labeled ? 2 : 1;
  const std::size_t bound_columns = header.size() - first_feature;
  if (bound_columns == 0 || bound_columns % 2 != 0) {
    fail(ErrorCode::SchemaError, "header needs lower/upper column pairs after id[,label]");
  }
  LabeledDataset data;
  std::string line;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != header.size()) {
      fail(ErrorCode::SchemaError, "row " + std::to_string(row) + " has " +
                                       std::to_string(cells.size()) + " cells, expected " +
                                       std::to_string(header.size()));
    }
    data.ids.push_back(cells[0]);
    if (labeled) data.labels.push_back(parse_label(cells[1], row));
    IntervalVector x;
    for (std::size_t c = first_feature; c < cells.size(); c += 2) {
      x.features.push_back(checked_interval(parse_real(cells[c], row, header[c]),
                                            parse_real(cells[c + 1], row, header[c + 1]), row));
    }
    data.observations.emplace_back(std::move(x));
  }
  finish_labels(data);
  return data;
}

LabeledDataset read_ivf(std::istream& in, const std::vector<std::string>& header) {
  const bool labeled = header.size() == 6;
  const std::vector<std::string> expected =
      labeled ? std::vector<std::string>{"id", "label", "channel", "t", "lower", "upper"}
              : std::vector<std::string>{"id", "channel", "t", "lower", "upper"};
  if (header != expected) {
    fail(ErrorCode::SchemaError, "curve header must be id,[label,]channel,t,lower,upper");
  }
  const std::size_t off = labeled ? 1 : 0;

  LabeledDataset data;
  std::vector<std::string> channel_names;
  std::string current_id;
  std::string current_channel;
  IntervalCurve curve;
  bool open = false;

  auto close_curve = [&](std::size_t row) {
    if (!open) return;
    for (const auto& ch : curve.channels) {
      if (ch.lower.size() != curve.grid.size()) {
        fail(ErrorCode::SchemaError, "channels of id '" + current_id +
                                         "' have different grids (before row " +
                                         std::to_string(row) + ")");
      }
    }
    data.observations.emplace_back(std::move(curve));
    curve = IntervalCurve{};
    open = false;
  };

  std::string line;
  std::size_t row = 1;
  std::size_t channel_pos = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != header.size()) {
      fail(ErrorCode::SchemaError, "row " + std::to_string(row) + " has wrong cell count");
    }
    const std::string& id = cells[0];
    const std::string& channel = cells[1 + off];
    if (channel.empty()) fail(ErrorCode::SchemaError, "missing value at " + location(row, "channel"));
    const double t = parse_real(cells[2 + off], row, "t");
    const Interval iv = checked_interval(parse_real(cells[3 + off], row, "lower"),
                                         parse_real(cells[4 + off], row, "upper"), row);

    if (!open || id != current_id) {
      close_curve(row);
      current_id = id;
      current_channel = channel;
      data.ids.push_back(id);
      if (labeled) data.labels.push_back(parse_label(cells[1], row));
      curve.channels.emplace_back();
      channel_pos = 0;
      open = true;
    } else {
      if (labeled && parse_label(cells[1], row) != data.labels.back()) {
        fail(ErrorCode::SchemaError, "label changes within id '" + id + "' at row " +
                                         std::to_string(row));
      }
      if (channel != current_channel) {
        current_channel = channel;
        curve.channels.emplace_back();
        channel_pos = 0;
      }
    }
    auto& ch = curve.channels.back();
    if (curve.channels.size() == 1) {
      if (!curve.grid.empty() && !(t > curve.grid.back())) {
        fail(ErrorCode::SchemaError, "t not increasing at row " + std::to_string(row));
      }
      curve.grid.push_back(t);
    } else if (channel_pos >= curve.grid.size() || curve.grid[channel_pos] != t) {
      fail(ErrorCode::SchemaError, "channel grid mismatch at row " + std::to_string(row));
    }
    ch.lower.push_back(iv.lower);
    ch.upper.push_back(iv.upper);
    ++channel_pos;
  }
  close_curve(row);
  finish_labels(data);
  return data;
}

}  // namespace

LabeledDataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::SchemaError, "missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const auto header = split_row(line);
  if (header.empty() || header[0] != "id") {
    fail(ErrorCode::SchemaError, "first header column must be 'id'");
  }
  const bool curves = std::find(header.begin(), header.end(), "channel") != header.end();
  LabeledDataset data = curves ? read_ivf(in, header) : read_ivd(in, header);
  if (data.empty()) fail(ErrorCode::SchemaError, "no data rows");
  validate(data);
  return data;
}

LabeledDataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return read_dataset_csv(in);
}

void write_ivd_csv(std::ostream& out, const LabeledDataset& data) {
  const auto k = std::get<IntervalVector>(data.observations.front()).size();
  out << "id";
  if (data.has_labels()) out << ",label";
  for (std::size_t j = 1; j <= k; ++j) out << ",f" << j << "_l,f" << j << "_u";
  out << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << (i < data.ids.size() ? data.ids[i] : std::to_string(i + 1));
    if (data.has_labels()) out << ',' << data.labels[i];
    for (const auto& iv : std::get<IntervalVector>(data.observations[i]).features) {
      out << ',' << format_real(iv.lower) << ',' << format_real(iv.upper);
    }
    out << '\n';
  }
}

void write_ivf_csv(std::ostream& out, const LabeledDataset& data) {
  out << (data.has_labels() ? "id,label,channel,t,lower,upper\n" : "id,channel,t,lower,upper\n");
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& c = std::get<IntervalCurve>(data.observations[i]);
    const std::string id = i < data.ids.size() ? data.ids[i] : std::to_string(i + 1);
    for (std::size_t v = 0; v < c.num_channels(); ++v) {
      for (std::size_t t = 0; t < c.grid_size(); ++t) {
        out << id;
        if (data.has_labels()) out << ',' << data.labels[i];
        out << ',' << (v + 1) << ',' << format_real(c.grid[t]) << ','
            << format_real(c.channels[v].lower[t]) << ',' << format_real(c.channels[v].upper[t])
            << '\n';
      }
    }
  }
}

void write_dataset_csv(const std::filesystem::path& path, const LabeledDataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  if (data.kind() == DataKind::Vector) {
    write_ivd_csv(out, data);
  } else {
    write_ivf_csv(out, data);
  }
  if (!out) fail(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

}  // namespace ivord
