#include "qwalk/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qwalk::io {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open " + tmp + " for writing");
    }
    out << content;
    out.flush();
    if (!out) {
      throw std::runtime_error("write failed for " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("rename failed for " + path);
  }
}

std::string csv_header(const std::vector<std::string>& comment_lines,
                       const std::vector<std::string>& columns) {
  std::ostringstream oss;
  for (const auto& line : comment_lines) {
    oss << "# " << line << "\n";
  }
  for (std::size_t i = 0; i < columns.size(); ++i) {
    oss << (i ? "," : "") << columns[i];
  }
  oss << "\n";
  return oss.str();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

}  // namespace qwalk::io
