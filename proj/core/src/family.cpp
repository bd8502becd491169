#include "hypspec/family.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>
#include <string>

#include "hypspec/error.hpp"
#include "hypspec/spectral.hpp"

namespace hypspec {

namespace {

constexpr int kUnset = std::numeric_limits<int>::max();

void glue_block(SurfaceSpec& spec, int base, int k, double twist) {
  for (int j = 1; j <= k; ++j) {
    const int odd = base + 2 * j - 2;
    spec.gluings.push_back({{odd, 1}, {odd + 1, 1}, twist});
    spec.gluings.push_back({{odd, 2}, {odd + 1, 2}, twist});
  }
  for (int j = 1; j < k; ++j) {
    spec.gluings.push_back({{base + 2 * j - 1, 0}, {base + 2 * j, 0}, twist});
  }
}

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

int prop1_pants_index(int k, int copy, int position) { return copy * 2 * k + position - 1; }

QBlock build_q_block(int k, double twist) {
  if (k < 1) fail(ErrorKind::Domain, "Q block needs k >= 1");
  QBlock q;
  q.k = k;
  q.spec.pants.assign(2 * static_cast<std::size_t>(k), hypgeom::CuffLengths{1.0, 1.0, 1.0});
  glue_block(q.spec, 0, k, twist);
  q.open = {CuffRef{0, 0}, CuffRef{2 * k - 1, 0}};

  std::vector<int> uses(3 * q.spec.pants.size(), 0);
  for (const Gluing& g : q.spec.gluings) {
    ++uses[3 * g.from.pants + g.from.cuff];
    ++uses[3 * g.to.pants + g.to.cuff];
  }
  const auto free_cuffs = std::count(uses.begin(), uses.end(), 0);
  if (q.euler_characteristic() != -2 * k || free_cuffs != 2) {
    fail(ErrorKind::Internal, "Q block has the wrong topology");
  }
  return q;
}

SurfaceSpec build_prop1_surface(int k, int l, double twist) {
  if (k < 1 || l < 1) fail(ErrorKind::Domain, "family needs k >= 1 and l >= 1");
  SurfaceSpec spec;
  spec.pants.assign(2 * static_cast<std::size_t>(k) * l, hypgeom::CuffLengths{1.0, 1.0, 1.0});
  for (int c = 0; c < l; ++c) glue_block(spec, prop1_pants_index(k, c, 1), k, twist);
  for (int c = 0; c < l; ++c) {
    spec.gluings.push_back({{prop1_pants_index(k, c, 2 * k), 0},
                            {prop1_pants_index(k, (c + 1) % l, 1), 0},
                            twist});
  }
  return spec;
}

Eigen::VectorXd staircase_function(const Mesh& mesh, int k, int copy) {
  if (k < 1) fail(ErrorKind::InvalidInput, "staircase needs k >= 1");
  const int pants = mesh.pants_count();
  if (pants % (2 * k) != 0 || copy < 0 || copy >= pants / (2 * k)) {
    fail(ErrorKind::InvalidInput, "mesh pants do not form Q-block copies for this k");
  }

  const int first = prop1_pants_index(k, copy, 1);
  std::vector<std::vector<int>> tris_of(2 * k);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const int p = mesh.triangles()[t].tag.pants;
    if (p < 0 || p >= pants) fail(ErrorKind::InvalidInput, "triangle without pants tag");
    if (p >= first && p < first + 2 * k) tris_of[p - first].push_back(t);
  }

  auto height = [k](int j) { return static_cast<double>(std::min(j, 2 * k - j)); };

  Eigen::VectorXd f = Eigen::VectorXd::Zero(mesh.vertex_count());
  std::vector<int> d_in(mesh.vertex_count(), kUnset), d_out(mesh.vertex_count(), kUnset);
  std::vector<std::vector<int>> adj(mesh.vertex_count());

  for (int pos = 1; pos <= 2 * k; ++pos) {
    const int p = first + pos - 1;
    if (tris_of[pos - 1].empty()) fail(ErrorKind::InvalidInput, "pants without triangles");

    std::vector<int> touched;
    for (int t : tris_of[pos - 1]) {
      for (const Side& s : mesh.triangles()[t].sides) {
        const MeshEdge& e = mesh.edges()[s.edge];
        if (adj[e.v0].empty()) touched.push_back(e.v0);
        if (adj[e.v1].empty()) touched.push_back(e.v1);
        adj[e.v0].push_back(e.v1);
        adj[e.v1].push_back(e.v0);
      }
    }

    auto bfs = [&](std::vector<int>& dist, std::initializer_list<int> cuffs) {
      std::vector<int> queue;
      for (int c : cuffs) {
        for (int v : mesh.cuff_loop(CuffRef{p, c}).vertices) {
          if (dist[v] == kUnset) {
            dist[v] = 0;
            queue.push_back(v);
          }
        }
      }
      for (std::size_t i = 0; i < queue.size(); ++i) {
        const int u = queue[i];
        for (int w : adj[u]) {
          if (dist[w] == kUnset) {
            dist[w] = dist[u] + 1;
            queue.push_back(w);
          }
        }
      }
    };
    const bool odd = pos % 2 == 1;
    if (odd) {
      bfs(d_in, {0});
      bfs(d_out, {1, 2});
    } else {
      bfs(d_in, {1, 2});
      bfs(d_out, {0});
    }

    const double lo = height(pos - 1), hi = height(pos);
    for (int v : touched) {
      if (d_in[v] == kUnset || d_out[v] == kUnset) {
        fail(ErrorKind::InvalidInput, "pants triangles are not connected to their cuffs");
      }
      const double t = static_cast<double>(d_in[v]) / (d_in[v] + d_out[v]);
      f[v] = lo + t * (hi - lo);
    }
    for (int v : touched) {
      adj[v].clear();
      d_in[v] = d_out[v] = kUnset;
    }
  }
  return f;
}

std::vector<Eigen::VectorXd> prop1_test_functions(const Mesh& mesh, int k, int l) {
  if (k < 1 || l < 1 || mesh.pants_count() != 2 * k * l) {
    fail(ErrorKind::InvalidInput, "mesh does not hold l copies of the Q block");
  }
  std::vector<Eigen::VectorXd> fs;
  fs.reserve(l);
  for (int c = 0; c < l; ++c) fs.push_back(staircase_function(mesh, k, c));
  return fs;
}

double fit_loglog_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    fail(ErrorKind::InvalidInput, "log-log fit needs two or more paired points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      fail(ErrorKind::InvalidInput, "log-log fit needs positive values");
    }
    sx += std::log(x[i]);
    sy += std::log(y[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  if (sxx == 0.0) fail(ErrorKind::InvalidInput, "log-log fit needs distinct x values");
  return sxy / sxx;
}

SharpnessReport verify_sharpness(const std::vector<int>& k_list, int l, double h_max,
                                 const SharpnessOptions& options) {
  if (k_list.empty()) fail(ErrorKind::InvalidInput, "no k values given");
  if (l < 1) fail(ErrorKind::Domain, "l must be >= 1");
  for (int k : k_list) {
    if (k < 1) fail(ErrorKind::Domain, "k must be >= 1");
  }

  auto member = [&](int k) {
    const Surface surface = assemble(build_prop1_surface(k, l, options.twist));
    const Mesh mesh = triangulate(surface, h_max);
    const SpectralPair pair = assemble_fem(mesh);
    SharpnessRow row;
    row.k = k;
    row.vertices = mesh.vertex_count();
    row.upper = minimax_upper_bound(pair, prop1_test_functions(mesh, k, l));
    row.lambda = lowest_eigs(pair, l, options.eigen).eigenvalues.back();
    return row;
  };

  std::vector<std::future<SharpnessRow>> jobs;
  jobs.reserve(k_list.size());
  for (int k : k_list) jobs.push_back(std::async(std::launch::async, member, k));

  SharpnessReport report;
  report.l = l;
  report.twist = options.twist;
  for (auto& job : jobs) report.rows.push_back(job.get());

  std::vector<double> ks, us, ls;
  for (const SharpnessRow& r : report.rows) {
    ks.push_back(r.k);
    us.push_back(r.upper);
    ls.push_back(r.lambda);
  }
  const bool distinct = std::adjacent_find(ks.begin(), ks.end()) == ks.end() && ks.size() >= 2;
  report.fit_upper_exponent =
      distinct ? fit_loglog_exponent(ks, us) : std::numeric_limits<double>::quiet_NaN();
  if (l > 1 && distinct) report.fit_lambda_exponent = fit_loglog_exponent(ks, ls);
  return report;
}

nlohmann::json to_json(const SharpnessReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const SharpnessRow& r : report.rows) {
    rows.push_back({{"k", r.k}, {"upper", r.upper}, {"lambda", r.lambda}});
  }
  nlohmann::json j{{"l", report.l}, {"rows", std::move(rows)}};
  j["fit_upper_exponent"] = std::isfinite(report.fit_upper_exponent)
                                ? nlohmann::json(report.fit_upper_exponent)
                                : nlohmann::json(nullptr);
  j["fit_lambda_exponent"] = report.fit_lambda_exponent
                                 ? nlohmann::json(*report.fit_lambda_exponent)
                                 : nlohmann::json(nullptr);
  j["closure"] = "gamma_1(P_2k) of copy i glued to gamma_1(P_1) of copy (i+1) mod l";
  j["twist"] = report.twist;
  return j;
}

void write_sharpness_tsv(std::ostream& out, const SharpnessReport& report) {
  out << "k\tupper\tlambda\n";
  for (const SharpnessRow& r : report.rows) {
    out << r.k << '\t' << format_double(r.upper) << '\t' << format_double(r.lambda) << '\n';
  }
}

}  // namespace hypspec
