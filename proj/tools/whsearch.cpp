// whsearch: encode vectors to binary codes, build hash indexes, and run /
// benchmark exact weighted-Hamming KNN search.
//
// Typical pipeline:
//   whsearch encode --synth 100000 --dim 32 --bits 64 --seed 7 \
//       --codes base.whc --model model.whm --queries 1000 --queries-out q.fvecs
//   whsearch build  --codes base.whc
//   whsearch search --codes base.whc --model model.whm --queries q.fvecs \
//       --method cse-multi --k 10
//   whsearch bench  --codes base.whc --model model.whm --queries q.fvecs \
//       --raw-base base.fvecs --report json

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "whs/baselines.hpp"
#include "whs/encode.hpp"
#include "whs/enumerator.hpp"
#include "whs/io.hpp"
#include "whs/multi_index.hpp"
#include "whs/single_table.hpp"

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::vector<float>> load_vectors(const std::string& path, const std::string& format) {
  if (format == "bvecs") {
    auto raw = whs::read_bvecs(path);
    std::vector<std::vector<float>> rows(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) rows[i].assign(raw[i].begin(), raw[i].end());
    return rows;
  }
  return whs::read_fvecs(path);
}

struct ReportRow {
  std::string method;
  int bits = 0;
  int tables = 0;
  std::size_t k = 0;
  double mean_query_ms = 0.0;
  double speedup_vs_linear = 0.0;  // 0 when no linear baseline was timed
  double precision_at_k = -1.0;    // -1 when no ground truth was given
  double mean_probes = 0.0;
  double mean_distance_computations = 0.0;
  double mean_sequence_length = 0.0;
};

void emit_report(const std::vector<ReportRow>& rows, const std::string& format) {
  if (format == "json") {
    json out = json::array();
    for (const auto& r : rows) {
      json j = {{"method", r.method},
                {"bits", r.bits},
                {"tables", r.tables},
                {"k", r.k},
                {"mean_query_ms", r.mean_query_ms},
                {"speedup_vs_linear", r.speedup_vs_linear},
                {"mean_probes", r.mean_probes},
                {"mean_distance_computations", r.mean_distance_computations},
                {"mean_sequence_length", r.mean_sequence_length}};
      if (r.precision_at_k >= 0.0) j["precision_at_k"] = r.precision_at_k;
      out.push_back(j);
    }
    std::printf("%s\n", out.dump(2).c_str());
    return;
  }
  std::printf(
      "method,bits,tables,k,mean_query_ms,speedup_vs_linear,precision_at_k,"
      "mean_probes,mean_distance_computations,mean_sequence_length\n");
  for (const auto& r : rows) {
    std::printf("%s,%d,%d,%zu,%.6f,%.3f,", r.method.c_str(), r.bits, r.tables, r.k,
                r.mean_query_ms, r.speedup_vs_linear);
    if (r.precision_at_k >= 0.0)
      std::printf("%.4f,", r.precision_at_k);
    else
      std::printf(",");
    std::printf("%.1f,%.1f,%.1f\n", r.mean_probes, r.mean_distance_computations,
                r.mean_sequence_length);
  }
}

// Everything a query run needs, resolved once up front.
struct QuerySet {
  std::vector<whs::BinaryCode> codes;  // encoded queries
  std::vector<whs::WeightVector> weights;
};

QuerySet prepare_queries(const whs::LshModel& model, const std::vector<std::vector<float>>& raw,
                         const std::string& scheme) {
  QuerySet qs;
  qs.codes.reserve(raw.size());
  qs.weights.reserve(raw.size());
  for (const auto& v : raw) {
    if (scheme == "unit") {
      qs.codes.push_back(whs::lsh_encode(model, v));
      qs.weights.push_back(whs::WeightVector::ones(model.bits()));
    } else {
      auto [q, w] = whs::asym_weights(model, v);
      qs.codes.push_back(q);
      qs.weights.push_back(std::move(w));
    }
  }
  return qs;
}

struct MethodStats {
  double total_secs = 0.0;
  double probes = 0.0;
  double dists = 0.0;
  double seq_len = 0.0;
  std::vector<std::vector<std::uint32_t>> ids;  // per query, ascending by distance
};

template <typename SearchFn>
MethodStats run_method(const QuerySet& qs, std::size_t k, SearchFn&& search) {
  MethodStats s;
  s.ids.reserve(qs.codes.size());
  auto t0 = Clock::now();
  for (std::size_t i = 0; i < qs.codes.size(); ++i) {
    whs::SearchResult r = search(qs.codes[i], qs.weights[i], k);
    s.probes += static_cast<double>(r.probes);
    s.dists += static_cast<double>(r.distance_computations);
    s.seq_len += static_cast<double>(r.sequence_length);
    std::vector<std::uint32_t> ids;
    for (std::size_t j = 0; j < r.neighbors.size() && j < k; ++j) ids.push_back(r.neighbors[j].id);
    s.ids.push_back(std::move(ids));
  }
  s.total_secs = since(t0);
  return s;
}

double mean_precision(const MethodStats& s, const std::vector<std::vector<std::int32_t>>& gt,
                      std::size_t k) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.ids.size(); ++i) {
    const auto& truth = gt[i];
    std::size_t hits = 0;
    for (std::uint32_t id : s.ids[i])
      if (std::find(truth.begin(), truth.end(), static_cast<std::int32_t>(id)) != truth.end())
        ++hits;
    acc += static_cast<double>(hits) / static_cast<double>(k);
  }
  return acc / static_cast<double>(s.ids.size());
}

int cmd_encode(const std::string& input, const std::string& format, std::size_t synth_n,
               std::size_t synth_dim, int bits, std::uint64_t seed, const std::string& codes_out,
               const std::string& model_out, std::size_t n_queries,
               const std::string& queries_out, const std::string& vectors_out) {
  std::vector<std::vector<float>> rows;
  std::size_t dim = 0;
  if (!input.empty()) {
    rows = load_vectors(input, format);
    if (rows.empty()) throw std::runtime_error("encode: input holds no vectors");
    dim = rows[0].size();
  } else {
    if (synth_n == 0 || synth_dim == 0)
      throw CLI::ValidationError("encode: give --input or --synth N with --dim D");
    whs::SynthDataset data(synth_n + n_queries, synth_dim, seed);
    dim = synth_dim;
    rows.reserve(synth_n);
    for (std::size_t i = 0; i < synth_n; ++i) rows.push_back(data.row(i));
    if (!queries_out.empty()) {
      std::vector<std::vector<float>> qrows;
      for (std::size_t i = synth_n; i < synth_n + n_queries; ++i) qrows.push_back(data.row(i));
      whs::write_fvecs(queries_out, qrows);
    }
  }

  auto model = whs::lsh_train(static_cast<int>(dim), bits, seed);
  std::vector<float> flat;
  flat.reserve(rows.size() * dim);
  for (const auto& r : rows) {
    if (r.size() != dim) throw std::runtime_error("encode: inconsistent input dimension");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  auto t0 = Clock::now();
  auto codes = whs::lsh_encode_all(model, flat, dim);
  double enc = since(t0);

  whs::write_codes(codes_out, codes);
  if (!model_out.empty()) whs::save_model(model_out, model);
  if (!vectors_out.empty()) whs::write_fvecs(vectors_out, rows);
  std::printf("encoded %zu vectors (dim %zu) to %d-bit codes in %.2fs -> %s\n", codes.size(), dim,
              bits, enc, codes_out.c_str());
  return 0;
}

int cmd_build(const std::string& codes_path, int tables, const std::string& report) {
  auto codes = whs::read_codes(codes_path);
  if (codes.empty()) throw std::runtime_error("build: empty code file");
  int b = codes[0].width();
  int m = tables > 0 ? tables : whs::choose_m(b, codes.size());

  auto t0 = Clock::now();
  whs::MultiIndex index(codes, m);
  double secs = since(t0);

  json j = {{"codes", codes_path}, {"n", codes.size()},    {"bits", b},
            {"tables", m},         {"build_secs", secs},   {"slices", json::array()}};
  for (int t = 0; t < index.table_count(); ++t) {
    const auto& sl = index.split()[static_cast<std::size_t>(t)];
    j["slices"].push_back({{"start", sl.start},
                           {"len", sl.len},
                           {"nonempty_buckets", index.table(t).nonempty_buckets()}});
  }
  if (report == "json") {
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf("n=%zu bits=%d tables=%d build_secs=%.3f\n", codes.size(), b, m, secs);
    for (const auto& sl : j["slices"])
      std::printf("slice start=%d len=%d nonempty_buckets=%zu\n", sl["start"].get<int>(),
                  sl["len"].get<int>(), sl["nonempty_buckets"].get<std::size_t>());
  }
  return 0;
}

int run_queries(const std::string& codes_path, const std::string& model_path,
                const std::string& queries_path, const std::string& format,
                std::vector<std::size_t> ks, const std::vector<std::string>& methods, int tables,
                const std::string& weights, std::size_t max_queries, const std::string& gt_path,
                const std::string& raw_base_path, const std::string& report) {
  auto codes = whs::read_codes(codes_path);
  if (codes.empty()) throw std::runtime_error("search: empty code file");
  const int b = codes[0].width();

  auto model = whs::load_model(model_path);
  if (model.bits() != b) throw std::runtime_error("search: model bit width does not match codes");

  auto raw_queries = load_vectors(queries_path, format);
  if (raw_queries.size() > max_queries) raw_queries.resize(max_queries);
  if (raw_queries.empty()) throw std::runtime_error("search: no queries");
  if (raw_queries[0].size() != static_cast<std::size_t>(model.dim()))
    throw std::runtime_error("search: query dimension does not match model");
  QuerySet qs = prepare_queries(model, raw_queries, weights);

  // Ground truth: an ivecs file of neighbor ids per query, or Euclidean
  // brute force over the raw base vectors.
  std::vector<std::vector<std::int32_t>> gt;
  if (!gt_path.empty()) {
    gt = whs::read_ivecs(gt_path);
    if (gt.size() < raw_queries.size()) throw std::runtime_error("search: ground truth too short");
  } else if (!raw_base_path.empty()) {
    auto base_rows = load_vectors(raw_base_path, "fvecs");
    if (base_rows.size() != codes.size())
      throw std::runtime_error("search: raw base size does not match code file");
    const std::size_t dim = base_rows[0].size();
    std::vector<float> flat;
    flat.reserve(base_rows.size() * dim);
    for (const auto& r : base_rows) flat.insert(flat.end(), r.begin(), r.end());
    gt.reserve(raw_queries.size());
    for (const auto& v : raw_queries) {
      auto ids = whs::brute_force_knn(flat, dim, v, 100);
      gt.emplace_back(ids.begin(), ids.end());
    }
  }

  // Indexes are built once, outside all timed sections.
  bool want_single = std::find(methods.begin(), methods.end(), "cse-single") != methods.end();
  bool want_multi = std::find(methods.begin(), methods.end(), "cse-multi") != methods.end();
  int m = tables > 0 ? tables : whs::choose_m(b, codes.size());

  std::unique_ptr<whs::SingleTable> single;
  if (want_single) {
    if (b > whs::SingleTable::kMaxWidth)
      throw std::runtime_error("search: cse-single needs codes of at most 32 bits");
    single = std::make_unique<whs::SingleTable>(codes);
  }
  std::unique_ptr<whs::MultiIndex> multi;
  if (want_multi) multi = std::make_unique<whs::MultiIndex>(codes, m);

  std::vector<ReportRow> rows;
  for (std::size_t k : ks) {
    // Linear scan is timed whenever requested or needed as the speed-up base.
    MethodStats linear;
    bool have_linear = false;
    for (const auto& method : methods) {
      MethodStats s;
      int row_tables = 1;
      if (method == "linear") {
        if (!have_linear) {
          linear = run_method(qs, k, [&](const auto& q, const auto& w, std::size_t kk) {
            return whs::linear_scan_knn(codes, q, w, kk);
          });
          have_linear = true;
        }
        s = linear;
      } else if (method == "lookup") {
        s = run_method(qs, k, [&](const auto& q, const auto& w, std::size_t kk) {
          return whs::lookup_scan_knn(codes, q, w, kk);
        });
      } else if (method == "cse-single") {
        s = run_method(qs, k, [&](const auto& q, const auto& w, std::size_t kk) {
          return whs::knn_single(*single, q, w, kk);
        });
      } else if (method == "cse-multi") {
        row_tables = m;
        s = run_method(qs, k, [&](const auto& q, const auto& w, std::size_t kk) {
          return whs::knn_multi(*multi, q, w, kk);
        });
      } else {
        throw CLI::ValidationError("unknown method: " + method);
      }

      ReportRow row;
      row.method = method;
      row.bits = b;
      row.tables = row_tables;
      row.k = k;
      const double nq = static_cast<double>(qs.codes.size());
      row.mean_query_ms = 1e3 * s.total_secs / nq;
      row.speedup_vs_linear = have_linear && s.total_secs > 0.0 && method != "linear"
                                  ? linear.total_secs / s.total_secs
                                  : (method == "linear" ? 1.0 : 0.0);
      row.mean_probes = s.probes / nq;
      row.mean_distance_computations = s.dists / nq;
      row.mean_sequence_length = s.seq_len / nq;
      if (!gt.empty()) row.precision_at_k = mean_precision(s, gt, k);
      rows.push_back(row);
    }
  }
  emit_report(rows, report);
  return 0;
}

int cmd_oracle_check(int bits_min, int bits_max, int trials, std::uint64_t seed,
                     std::size_t length) {
  using namespace whs;
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int b = bits_min; b <= bits_max; ++b) {
    bool ok = true;
    for (int trial = 0; trial < trials && ok; ++trial) {
      std::uint64_t trial_seed = rng();
      std::mt19937_64 trng(trial_seed);
      std::uniform_real_distribution<double> uni(0.0, 1.0);
      std::vector<double> wv(static_cast<std::size_t>(b));
      for (auto& x : wv) x = uni(trng);
      if (b >= 3 && trng() % 2 == 0) wv[1] = wv[0];
      if (b >= 3 && trng() % 2 == 0) wv.back() = 0.0;
      WeightVector w(wv);
      BinaryCode q = BinaryCode::from_words(b, trng(), trng());

      std::size_t L = length;
      if (b < 63) L = std::min(L, std::size_t{1} << b);
      auto oracle = heap_sequence_oracle(q, w, L);
      CseEnumerator e(q, w);
      if (std::abs(e.element(1).second - oracle[0].second) > 1e-9) ok = false;
      for (std::size_t i = 1; i < L && ok; ++i) {
        auto nx = e.next();
        if (!nx || std::abs(nx->second - oracle[i].second) > 1e-9) ok = false;
        if (e.last_candidate_evals() > static_cast<std::size_t>(b)) ok = false;
      }
      if (!ok) {
        std::printf("FAIL b=%d trial=%d seed=%llu\n", b, trial,
                    static_cast<unsigned long long>(trial_seed));
        ++failures;
      }
    }
    if (ok) std::printf("PASS b=%d (%d trials, length %zu)\n", b, trials, length);
  }
  if (failures == 0) {
    std::printf("oracle-check: all widths agree\n");
    return 0;
  }
  std::printf("oracle-check: %d widths FAILED\n", failures);
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact K-nearest-neighbor search over binary codes under weighted Hamming distance"};
  app.require_subcommand(1);

  // ---- encode ----
  std::string in_path, in_format = "fvecs", codes_out, model_out, queries_out, vectors_out;
  std::size_t synth_n = 0, synth_dim = 0, n_queries = 1000;
  int bits = 64;
  std::uint64_t seed = 42;
  auto* enc = app.add_subcommand("encode", "Hash raw vectors (file or synthetic) to binary codes");
  enc->add_option("--input", in_path, "input vector file");
  enc->add_option("--format", in_format, "input format")
      ->check(CLI::IsMember({"fvecs", "bvecs"}));
  enc->add_option("--synth", synth_n, "generate a synthetic base set of this size instead");
  enc->add_option("--dim", synth_dim, "synthetic vector dimension");
  enc->add_option("--bits", bits, "code width b (<= 128)")->check(CLI::Range(1, 128));
  enc->add_option("--seed", seed, "RNG seed (model and synthetic data)");
  enc->add_option("--codes", codes_out, "output code file")->required();
  enc->add_option("--model", model_out, "output hashing model file");
  enc->add_option("--queries", n_queries, "synthetic query count for --queries-out");
  enc->add_option("--queries-out", queries_out, "write held-out synthetic queries (fvecs)");
  enc->add_option("--vectors-out", vectors_out, "also write the raw base vectors (fvecs)");

  // ---- build ----
  std::string b_codes, b_report = "csv";
  int b_tables = 0;
  auto* bld = app.add_subcommand("build", "Build a multi-index and report its shape");
  bld->add_option("--codes", b_codes, "code file")->required();
  bld->add_option("--tables", b_tables, "table count m (default: b / log2 n)");
  bld->add_option("--report", b_report, "report format")->check(CLI::IsMember({"csv", "json"}));

  // ---- search / bench ----
  std::string s_codes, s_model, s_queries, s_format = "fvecs", s_weights = "asym";
  std::string s_gt, s_raw_base, s_report = "csv";
  std::vector<std::size_t> s_ks;
  std::vector<std::string> s_methods;
  int s_tables = 0;
  std::size_t s_max_queries = 1000;

  auto add_query_opts = [&](CLI::App* cmd) {
    cmd->add_option("--codes", s_codes, "base code file")->required();
    cmd->add_option("--model", s_model, "hashing model file")->required();
    cmd->add_option("--queries", s_queries, "query vector file")->required();
    cmd->add_option("--format", s_format, "query file format")
        ->check(CLI::IsMember({"fvecs", "bvecs"}));
    cmd->add_option("--k", s_ks, "K values (default 1 10 100)");
    cmd->add_option("--tables", s_tables, "table count m (default: b / log2 n)");
    cmd->add_option("--weights", s_weights, "query weight scheme")
        ->check(CLI::IsMember({"asym", "unit"}));
    cmd->add_option("--num-queries", s_max_queries, "cap on queries used (default 1000)");
    cmd->add_option("--gt", s_gt, "ground-truth ivecs (neighbor ids per query)");
    cmd->add_option("--raw-base", s_raw_base,
                    "raw base fvecs; Euclidean 100-NN ground truth is computed from it");
    cmd->add_option("--report", s_report, "report format")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* sea = app.add_subcommand("search", "Run KNN queries with one method");
  add_query_opts(sea);
  sea->add_option("--method", s_methods, "search method")
      ->check(CLI::IsMember({"cse-single", "cse-multi", "linear", "lookup"}))
      ->required();

  auto* ben = app.add_subcommand("bench", "Compare all applicable methods against linear scan");
  add_query_opts(ben);

  // ---- oracle-check ----
  int oc_min = 3, oc_max = 20, oc_trials = 25;
  std::uint64_t oc_seed = 1;
  std::size_t oc_len = 4096;
  auto* orc = app.add_subcommand("oracle-check",
                                 "Cross-check the enumerator against an independent oracle");
  orc->add_option("--bits-min", oc_min)->check(CLI::Range(1, 24));
  orc->add_option("--bits-max", oc_max)->check(CLI::Range(1, 24));
  orc->add_option("--trials", oc_trials);
  orc->add_option("--seed", oc_seed);
  orc->add_option("--length", oc_len, "sequence length compared per trial");

  CLI11_PARSE(app, argc, argv);

  try {
    if (enc->parsed())
      return cmd_encode(in_path, in_format, synth_n, synth_dim, bits, seed, codes_out, model_out,
                        n_queries, queries_out, vectors_out);
    if (bld->parsed()) return cmd_build(b_codes, b_tables, b_report);
    if (sea->parsed() || ben->parsed()) {
      if (s_ks.empty()) s_ks = {1, 10, 100};
      std::vector<std::string> methods = s_methods;
      if (ben->parsed()) {
        methods = {"linear", "lookup", "cse-multi"};
        auto codes_width = [&] {
          whs::CodeStream cs(s_codes);
          return cs.width();
        }();
        if (codes_width <= whs::SingleTable::kMaxWidth) methods.push_back("cse-single");
      } else if (std::find(methods.begin(), methods.end(), "linear") == methods.end()) {
        // speed-up columns need the linear baseline; time it first
        methods.insert(methods.begin(), "linear");
      }
      return run_queries(s_codes, s_model, s_queries, s_format, s_ks, methods, s_tables, s_weights,
                         s_max_queries, s_gt, s_raw_base, s_report);
    }
    if (orc->parsed()) return cmd_oracle_check(oc_min, oc_max, oc_trials, oc_seed, oc_len);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
