#include "dqw/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace dqw {

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& content,
                  std::ostream& stdout_stream) {
  if (path == "-") {
    stdout_stream << content;
    stdout_stream.flush();
    if (!stdout_stream) throw IoError("writing to standard output failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("writing to '" + path + "' failed");
}

std::string spectrum_to_csv(const std::vector<EigenSystem>& blocks) {
  std::ostringstream os;
  os << "k,j,re,im,phase,residual\n";
  for (size_t k = 0; k < blocks.size(); ++k)
    for (int j = 0; j < 6; ++j) {
      const cd& lam = blocks[k].eigenvalues[j];
      os << k << ',' << (j + 1) << ',' << fmt_g17(lam.real()) << ',' << fmt_g17(lam.imag())
         << ',' << fmt_g17(std::atan2(lam.imag(), lam.real())) << ','
         << fmt_g17(blocks[k].residuals[j]) << '\n';
    }
  return os.str();
}

std::string spectrum_to_json(const std::vector<EigenSystem>& blocks) {
  std::ostringstream os;
  os << "{\n  \"n\": " << blocks.size() << ",\n  \"blocks\": [\n";
  for (size_t k = 0; k < blocks.size(); ++k) {
    os << "    {\"k\": " << k << ", \"eigenvalues\": [";
    for (int j = 0; j < 6; ++j) {
      const cd& lam = blocks[k].eigenvalues[j];
      os << (j ? ", " : "") << "{\"j\": " << (j + 1) << ", \"re\": " << fmt_g17(lam.real())
         << ", \"im\": " << fmt_g17(lam.imag())
         << ", \"phase\": " << fmt_g17(std::atan2(lam.imag(), lam.real()))
         << ", \"residual\": " << fmt_g17(blocks[k].residuals[j]) << "}";
    }
    os << "]}" << (k + 1 < blocks.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

std::string timeavg_to_csv(const TimeAveragedResult& r, double theta_or_n) {
  std::ostringstream os;
  os << "theta_or_n,s,r,pbar\n";
  std::string param = fmt_g17(theta_or_n);
  for (int s = 0; s < 2; ++s)
    for (int v = 0; v < r.n; ++v)
      os << param << ',' << s << ',' << v << ','
         << fmt_g17(r.pbar(vertex_index(s, v, r.n))) << '\n';
  return os.str();
}

std::string timeavg_to_json(const TimeAveragedResult& r, double theta_or_n) {
  std::ostringstream os;
  os << "{\n  \"n\": " << r.n << ",\n  \"T\": " << r.T << ",\n  \"method\": \""
     << (r.method == AvgMethod::Direct ? "direct"
                                       : r.method == AvgMethod::Spectral ? "spectral" : "limit")
     << "\",\n  \"theta_or_n\": " << fmt_g17(theta_or_n) << ",\n  \"pbar\": [\n";
  for (int s = 0; s < 2; ++s)
    for (int v = 0; v < r.n; ++v)
      os << "    {\"s\": " << s << ", \"r\": " << v
         << ", \"value\": " << fmt_g17(r.pbar(vertex_index(s, v, r.n))) << "}"
         << (s == 1 && v + 1 == r.n ? "" : ",") << "\n";
  os << "  ]";
  if (r.pbar_diagonal) {
    os << ",\n  \"pbar_diagonal\": [\n";
    for (int s = 0; s < 2; ++s)
      for (int v = 0; v < r.n; ++v)
        os << "    {\"s\": " << s << ", \"r\": " << v
           << ", \"value\": " << fmt_g17((*r.pbar_diagonal)(vertex_index(s, v, r.n))) << "}"
           << (s == 1 && v + 1 == r.n ? "" : ",") << "\n";
    os << "  ]";
  }
  os << "\n}\n";
  return os.str();
}

std::string sweep_to_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "theta_or_n,s,r,pbar\n";
  for (const SweepPoint& pt : r.points) {
    std::string param = fmt_g17(pt.parameter);
    for (size_t i = 0; i < r.vertices.size(); ++i)
      os << param << ',' << r.vertices[i].s << ',' << r.vertices[i].r << ','
         << fmt_g17(pt.pbar_at_vertices[i]) << '\n';
  }
  return os.str();
}

std::string sweep_to_json(const SweepResult& r) {
  std::ostringstream os;
  os << "{\n  \"axis\": \"" << (r.axis == SweepAxis::Theta ? "theta" : "n")
     << "\",\n  \"vertices\": [";
  for (size_t i = 0; i < r.vertices.size(); ++i)
    os << (i ? ", " : "") << "{\"s\": " << r.vertices[i].s << ", \"r\": " << r.vertices[i].r
       << "}";
  os << "],\n  \"points\": [\n";
  for (size_t p = 0; p < r.points.size(); ++p) {
    os << "    {\"parameter\": " << fmt_g17(r.points[p].parameter) << ", \"pbar\": [";
    for (size_t i = 0; i < r.points[p].pbar_at_vertices.size(); ++i)
      os << (i ? ", " : "") << fmt_g17(r.points[p].pbar_at_vertices[i]);
    os << "]}" << (p + 1 < r.points.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

std::string state_to_json(const WalkState& state) {
  std::ostringstream os;
  os << "{\n  \"n\": " << state.n << ",\n  \"amplitudes\": [\n";
  for (int l = 0; l < 3; ++l)
    for (int s = 0; s < 2; ++s)
      for (int r = 0; r < state.n; ++r) {
        const cd& a = state.amplitudes(amp_index(l, s, r, state.n));
        os << "    {\"l\": " << l << ", \"s\": " << s << ", \"r\": " << r
           << ", \"re\": " << fmt_g17(a.real()) << ", \"im\": " << fmt_g17(a.imag()) << "}"
           << (l == 2 && s == 1 && r + 1 == state.n ? "" : ",") << "\n";
      }
  os << "  ]\n}\n";
  return os.str();
}

std::string graph_to_json(const CayleyGraph& g) {
  auto pairs = [](std::ostringstream& os,
                  const std::vector<std::pair<DihedralVertex, DihedralVertex>>& list) {
    for (size_t i = 0; i < list.size(); ++i)
      os << (i ? ", " : "") << "[" << list[i].first.s << ", " << list[i].first.r << ", "
         << list[i].second.s << ", " << list[i].second.r << "]";
  };
  std::ostringstream os;
  os << "{\n  \"n\": " << g.n << ",\n  \"directed\": [";
  pairs(os, g.directed_arcs);
  os << "],\n  \"undirected\": [";
  pairs(os, g.undirected_edges);
  os << "]\n}\n";
  return os.str();
}

}  // namespace dqw
