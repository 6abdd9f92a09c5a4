#include <charconv>
#include <fstream>
#include <sstream>

#include "cdesign/designs.hpp"

namespace cdesign {

DesignMatrix::DesignMatrix(int rows, int cols, int fill)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("DesignMatrix: negative dimension");
}

DesignMatrix DesignMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) return {};
  DesignMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.front().size()) {
      throw ParseError(static_cast<int>(r) + 1, "ragged row: expected " +
                                                    std::to_string(rows.front().size()) +
                                                    " entries, got " + std::to_string(rows[r].size()));
    }
    std::copy(rows[r].begin(), rows[r].end(), m.row(static_cast<int>(r)));
  }
  return m;
}

DesignMatrix parse_matrix(std::string_view text) {
  std::vector<int> data;
  int rows = 0;
  int cols = -1;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    std::size_t pos = 0;
    while (pos < line.size() && is_space(line[pos])) ++pos;
    if (pos == line.size() || line[pos] == '#') continue;

    int count = 0;
    while (pos < line.size()) {
      std::size_t end = pos;
      while (end < line.size() && !is_space(line[end])) ++end;
      const std::string_view token = line.substr(pos, end - pos);
      int value = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line_no, "'" + std::string(token) + "' is not an integer");
      }
      data.push_back(value);
      ++count;
      pos = end;
      while (pos < line.size() && is_space(line[pos])) ++pos;
    }
    if (cols < 0) {
      cols = count;
    } else if (count != cols) {
      throw ParseError(line_no, "ragged row: expected " + std::to_string(cols) + " entries, got " +
                                    std::to_string(count));
    }
    ++rows;
  }
  if (rows == 0) throw ParseError(line_no == 0 ? 1 : line_no, "no matrix rows");

  DesignMatrix m(rows, cols);
  std::copy(data.begin(), data.end(), m.row(0));
  return m;
}

std::string format_matrix(const DesignMatrix& m) {
  std::string out;
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c) out += ' ';
      out += std::to_string(m.at(r, c));
    }
    out += '\n';
  }
  return out;
}

DesignMatrix load_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

}  // namespace cdesign
