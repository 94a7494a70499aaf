#include "hyperd1/hyperd1.h"

#include <exception>
#include <string>
#include <vector>

#include "hyperd1/driver.hpp"
#include "hyperd1/hausdorff.hpp"
#include "hyperd1/json_io.hpp"
#include "hyperd1/line_d1.hpp"
#include "hyperd1/steiner_forest.hpp"

struct hd1_space {
  hyperd1::SpacePtr space;
};

struct hd1_report {
  std::string text;
};

namespace {

thread_local std::string lastError;

hd1_status statusFor(hyperd1::ErrorCode code) {
  using hyperd1::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return HD1_ERR_INVALID_ARGUMENT;
    case ErrorCode::ParseError: return HD1_ERR_PARSE;
    case ErrorCode::InvalidMetric: return HD1_ERR_INVALID_METRIC;
    case ErrorCode::IndexOutOfRange: return HD1_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::DuplicateIndex: return HD1_ERR_DUPLICATE_INDEX;
    case ErrorCode::EmptySet: return HD1_ERR_EMPTY_SET;
    case ErrorCode::SpaceMismatch: return HD1_ERR_SPACE_MISMATCH;
    case ErrorCode::InvalidGraph: return HD1_ERR_INVALID_GRAPH;
    case ErrorCode::ComponentMissesSet: return HD1_ERR_COMPONENT_MISSES_SET;
    case ErrorCode::VertexNotCovered: return HD1_ERR_VERTEX_NOT_COVERED;
    case ErrorCode::TooLarge: return HD1_ERR_TOO_LARGE;
    case ErrorCode::CapExceeded: return HD1_ERR_CAP_EXCEEDED;
    case ErrorCode::NotSeparated: return HD1_ERR_NOT_SEPARATED;
    case ErrorCode::NotATree: return HD1_ERR_NOT_A_TREE;
    case ErrorCode::DegenerateLadder: return HD1_ERR_DEGENERATE_LADDER;
    case ErrorCode::GeneratorFailure: return HD1_ERR_GENERATOR_FAILURE;
    case ErrorCode::NoContractionInfo: return HD1_ERR_NO_CONTRACTION_INFO;
    case ErrorCode::CertificateUnavailable: return HD1_ERR_CERTIFICATE_UNAVAILABLE;
  }
  return HD1_ERR_INTERNAL;
}

hd1_status fail(hd1_status status, std::string message) {
  lastError = std::move(message);
  return status;
}

template <typename F>
hd1_status guarded(F&& body) noexcept {
  try {
    body();
    return HD1_OK;
  } catch (const hyperd1::Error& e) {
    return fail(statusFor(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(HD1_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HD1_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HD1_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HD1_ERR_INTERNAL, "unknown exception");
  }
}

void requireNonNull(const void* p, const char* what) {
  if (p == nullptr) throw hyperd1::Error(hyperd1::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

hyperd1::PointSet pointSet(const hd1_space* space, const size_t* idx, size_t n, const char* what) {
  if (n > 0) requireNonNull(idx, what);
  return hyperd1::PointSet(space->space, std::vector<hyperd1::PointIndex>(idx, idx + n));
}

hyperd1::SolverCaps toCaps(const hd1_caps* caps) {
  hyperd1::SolverCaps out;
  if (caps != nullptr) {
    out.terminalCap = caps->terminal_cap;
    out.poolCap = caps->pool_cap;
    out.oracleCap = caps->oracle_cap;
  }
  return out;
}

template <typename Make>
hd1_status makeSpace(hd1_space** out, Make&& make) {
  return guarded([&] {
    requireNonNull(out, "out");
    *out = new hd1_space{make()};
  });
}

}  // namespace

extern "C" {

const char* hd1_version(void) { return hyperd1::libraryVersion(); }

const char* hd1_status_name(hd1_status status) {
  switch (status) {
    case HD1_OK: return "OK";
    case HD1_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case HD1_ERR_PARSE: return "ParseError";
    case HD1_ERR_INVALID_METRIC: return "InvalidMetric";
    case HD1_ERR_INDEX_OUT_OF_RANGE: return "IndexOutOfRange";
    case HD1_ERR_DUPLICATE_INDEX: return "DuplicateIndex";
    case HD1_ERR_EMPTY_SET: return "EmptySet";
    case HD1_ERR_SPACE_MISMATCH: return "SpaceMismatch";
    case HD1_ERR_INVALID_GRAPH: return "InvalidGraph";
    case HD1_ERR_COMPONENT_MISSES_SET: return "ComponentMissesSet";
    case HD1_ERR_VERTEX_NOT_COVERED: return "VertexNotCovered";
    case HD1_ERR_TOO_LARGE: return "TooLarge";
    case HD1_ERR_CAP_EXCEEDED: return "CapExceeded";
    case HD1_ERR_NOT_SEPARATED: return "NotSeparated";
    case HD1_ERR_NOT_A_TREE: return "NotATree";
    case HD1_ERR_DEGENERATE_LADDER: return "DegenerateLadder";
    case HD1_ERR_GENERATOR_FAILURE: return "GeneratorFailure";
    case HD1_ERR_NO_CONTRACTION_INFO: return "NoContractionInfo";
    case HD1_ERR_CERTIFICATE_UNAVAILABLE: return "CertificateUnavailable";
    case HD1_ERR_SELFTEST_FAILED: return "SelftestFailed";
    case HD1_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* hd1_last_error(void) { return lastError.c_str(); }

void hd1_default_caps(hd1_caps* caps) {
  if (caps == nullptr) return;
  const hyperd1::SolverCaps defaults;
  caps->terminal_cap = defaults.terminalCap;
  caps->pool_cap = defaults.poolCap;
  caps->oracle_cap = defaults.oracleCap;
}

void hd1_run_options_init(hd1_run_options* options) {
  if (options == nullptr) return;
  *options = hd1_run_options{};
  options->timing = 1;
  options->jobs = 1;
  options->seed = 1;
  hd1_default_caps(&options->caps);
}

hd1_status hd1_space_create_line(const double* coords, size_t n, hd1_space** out) {
  return makeSpace(out, [&] {
    if (n > 0) requireNonNull(coords, "coords");
    return hyperd1::MetricSpace::realLine(std::vector<double>(coords, coords + n));
  });
}

hd1_status hd1_space_create_matrix(const double* dist, size_t n, hd1_space** out) {
  return makeSpace(out, [&] {
    if (n > 0) requireNonNull(dist, "dist");
    std::vector<std::vector<double>> rows(n);
    for (size_t i = 0; i < n; ++i) rows[i].assign(dist + i * n, dist + (i + 1) * n);
    return hyperd1::MetricSpace::finiteMatrix(rows);
  });
}

hd1_status hd1_space_create_euclidean(const double* coords, size_t n, size_t dim, hd1_space** out) {
  return makeSpace(out, [&] {
    if (n > 0 && dim > 0) requireNonNull(coords, "coords");
    std::vector<std::vector<double>> pts(n);
    for (size_t i = 0; i < n; ++i) pts[i].assign(coords + i * dim, coords + (i + 1) * dim);
    return hyperd1::MetricSpace::euclidean(dim, pts);
  });
}

hd1_status hd1_space_from_json(const char* json, hd1_space** out) {
  return makeSpace(out, [&] {
    requireNonNull(json, "json");
    return hyperd1::json_io::spaceFromJson(nlohmann::json::parse(json));
  });
}

void hd1_space_free(hd1_space* space) { delete space; }

size_t hd1_space_size(const hd1_space* space) { return space == nullptr ? 0 : space->space->size(); }

hd1_status hd1_space_distance(const hd1_space* space, size_t i, size_t j, double* out) {
  return guarded([&] {
    requireNonNull(space, "space");
    requireNonNull(out, "out");
    *out = space->space->distance(i, j);
  });
}

hd1_status hd1_hausdorff(const hd1_space* space, const size_t* a, size_t na, const size_t* b, size_t nb,
                         double* out) {
  return guarded([&] {
    requireNonNull(space, "space");
    requireNonNull(out, "out");
    *out = hyperd1::hausdorffDistance(pointSet(space, a, na, "a"), pointSet(space, b, nb, "b"));
  });
}

hd1_status hd1_d1_line(const hd1_space* space, const size_t* a, size_t na, const size_t* b, size_t nb,
                       double* out) {
  return guarded([&] {
    requireNonNull(space, "space");
    requireNonNull(out, "out");
    *out = hyperd1::d1Line(pointSet(space, a, na, "a"), pointSet(space, b, nb, "b")).value;
  });
}

hd1_status hd1_d1_exact(const hd1_space* space, const size_t* a, size_t na, const size_t* b, size_t nb,
                        const size_t* pool, size_t npool, const hd1_caps* caps, double* out) {
  return guarded([&] {
    requireNonNull(space, "space");
    requireNonNull(out, "out");
    if (npool > 0) requireNonNull(pool, "pool");
    const hyperd1::SteinerInstance inst(pointSet(space, a, na, "a"), pointSet(space, b, nb, "b"),
                                        std::vector<hyperd1::PointIndex>(pool, pool + npool));
    *out = hyperd1::d1Exact(inst, toCaps(caps)).value;
  });
}

hd1_status hd1_mst_upper_bound(const hd1_space* space, const size_t* a, size_t na, const size_t* b, size_t nb,
                               double* out) {
  return guarded([&] {
    requireNonNull(space, "space");
    requireNonNull(out, "out");
    const hyperd1::SteinerInstance inst(pointSet(space, a, na, "a"), pointSet(space, b, nb, "b"));
    *out = hyperd1::mstUpperBound(inst).value;
  });
}

hd1_status hd1_separation_lower_bound(const hd1_space* space, const size_t* a, size_t na, double epsilon,
                                      double* out) {
  return guarded([&] {
    requireNonNull(space, "space");
    requireNonNull(out, "out");
    *out = hyperd1::separationLowerBound(pointSet(space, a, na, "a"), epsilon);
  });
}

hd1_status hd1_run(const char* command, const char* input_json, const hd1_run_options* options,
                   hd1_report** out) {
  bool selftestFailed = false;
  const hd1_status status = guarded([&] {
    requireNonNull(command, "command");
    requireNonNull(out, "out");
    hyperd1::RunOptions opt;
    if (options != nullptr) {
      opt.verify = options->verify != 0;
      opt.diagnostic = options->diagnostic != 0;
      opt.timing = options->timing != 0;
      opt.jobs = options->jobs == 0 ? 1 : options->jobs;
      opt.seed = options->seed;
      if (options->has_depth) opt.depth = options->depth;
      if (options->has_epsilon) opt.epsilon = options->epsilon;
      opt.caps = toCaps(&options->caps);
    }
    const nlohmann::json input =
        (input_json == nullptr || *input_json == '\0') ? nlohmann::json() : nlohmann::json::parse(input_json);
    const nlohmann::json report = hyperd1::runCommand(command, input, opt);
    selftestFailed = std::string_view(command) == "selftest" && !report["result"].value("passed", false);
    *out = new hd1_report{report.dump(2)};
  });
  if (status == HD1_OK && selftestFailed) return fail(HD1_ERR_SELFTEST_FAILED, "selftest found oracle mismatches");
  return status;
}

const char* hd1_report_json(const hd1_report* report) { return report == nullptr ? "" : report->text.c_str(); }

void hd1_report_free(hd1_report* report) { delete report; }

int hd1_exit_code(hd1_status status) {
  switch (status) {
    case HD1_OK: return 0;
    case HD1_ERR_TOO_LARGE:
    case HD1_ERR_CAP_EXCEEDED: return 3;
    case HD1_ERR_SELFTEST_FAILED:
    case HD1_ERR_INTERNAL: return 1;
    default: return 2;
  }
}

}  // extern "C"
