#include "aplab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

namespace aplab {

namespace {

void emit(const Json& j, std::string& out, int indent, int depth) {
  const bool pretty = indent > 0;
  const std::string pad = pretty ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = pretty ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* sep = pretty ? ",\n" : ",";
  const char* open_nl = pretty ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += open_nl;
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += sep;
        first = false;
        out += pad;
        out += Json(key).dump();
        out += pretty ? ": " : ":";
        emit(value, out, indent, depth + 1);
      }
      out += open_nl;
      out += close_pad;
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += open_nl;
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += sep;
        first = false;
        out += pad;
        emit(value, out, indent, depth + 1);
      }
      out += open_nl;
      out += close_pad;
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string dump_json(const Json& j) {
  std::string out;
  emit(j, out, 2, 0);
  out += "\n";
  return out;
}

std::string dump_json_line(const Json& j) {
  std::string out;
  emit(j, out, 0, 0);
  return out;
}

Json certificate_json(const BoundCertificate& c) {
  Json j;
  j["check"] = c.check;
  j["seed"] = c.seed;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["margin"] = c.margin;
  j["pass"] = c.pass;
  return j;
}

void prepare_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string());
  }
  const auto probe = dir / ".write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw IoError("output directory is not writable: " + dir.string());
  }
  std::filesystem::remove(probe, ec);
}

void emit_report(const std::filesystem::path& dir, const std::vector<ReportFile>& files) {
  if (files.empty()) throw std::invalid_argument("emit_report: nothing to write");
  prepare_output_dir(dir);
  std::vector<std::filesystem::path> temps;
  auto cleanup = [&temps] {
    std::error_code ec;
    for (const auto& t : temps) std::filesystem::remove(t, ec);
  };
  for (const auto& file : files) {
    const auto tmp = dir / (file.name + ".tmp");
    temps.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(file.contents.data(), static_cast<std::streamsize>(file.contents.size()));
    out.close();
    if (!out) {
      cleanup();
      throw IoError("failed writing " + tmp.string());
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::error_code ec;
    std::filesystem::rename(temps[i], dir / files[i].name, ec);
    if (ec) {
      cleanup();
      throw IoError("failed renaming " + temps[i].string() + ": " + ec.message());
    }
  }
}

}  // namespace aplab
