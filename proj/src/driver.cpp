#include "hyperd1/driver.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <thread>

#include "hyperd1/fractal_line.hpp"
#include "hyperd1/hausdorff.hpp"
#include "hyperd1/json_io.hpp"
#include "hyperd1/line_d1.hpp"
#include "hyperd1/tree_tools.hpp"

#ifndef HYPERD1_VERSION
#define HYPERD1_VERSION "0.0.0"
#endif

namespace hyperd1 {

using nlohmann::json;
using json_io::get;

namespace {

struct Instance {
  SpacePtr space;
  PointSet a;
  PointSet b;
  std::vector<PointIndex> pool;
};

Instance instanceFromJson(const json& j) {
  auto space = json_io::spaceFromJson(j);
  auto a = json_io::pointSetFromJson(space, j.contains("A") ? j.at("A") : json(), "A");
  auto b = json_io::pointSetFromJson(space, j.contains("B") ? j.at("B") : json(), "B");
  std::vector<PointIndex> pool;
  if (j.contains("pool")) pool = get<std::vector<PointIndex>>(j, "pool");
  return {space, std::move(a), std::move(b), std::move(pool)};
}

json blocksToJson(const std::vector<LabeledPoint>& merged, const std::vector<LineBlock>& blocks) {
  json out = json::array();
  for (const auto& blk : blocks) {
    std::vector<PointIndex> members;
    for (std::size_t k = blk.first; k <= blk.last; ++k) members.push_back(merged[k].index);
    out.push_back(members);
  }
  return out;
}

// Whether the pool-relative optimum is the d¹ of the ambient space itself.
std::string exactness(const SteinerInstance& inst) {
  const MetricSpace& space = inst.space();
  if (space.kind() == MetricSpace::Kind::RealLine) return "ambient";
  if (space.kind() == MetricSpace::Kind::FiniteMatrix &&
      inst.terminals().size() + inst.pool().size() == space.size())
    return "ambient";
  return "pool-relative";
}

// --- subcommands --------------------------------------------------------

json runHausdorff(const json& in, const RunOptions&) {
  const auto inst = instanceFromJson(in);
  return {{"value", hausdorffDistance(inst.a, inst.b)}};
}

json runD1Line(const json& in, const RunOptions&) {
  const auto inst = instanceFromJson(in);
  const auto res = d1Line(inst.a, inst.b);
  return {{"value", res.value},
          {"blocks", blocksToJson(mergeLabeled(inst.a, inst.b), res.blocks)},
          {"certificate", json_io::certificateToJson(res.certificate)}};
}

json runD1Exact(const json& in, const RunOptions& opt) {
  const auto inst = instanceFromJson(in);
  const SteinerInstance steiner(inst.a, inst.b, inst.pool);
  const auto res = d1Exact(steiner, opt.caps);
  return {{"value", res.value},
          {"exactness", exactness(steiner)},
          {"hausdorffLowerBound", hausdorffDistance(inst.a, inst.b)},
          {"certificate", json_io::certificateToJson(res.certificate)}};
}

json runD1Bounds(const json& in, const RunOptions& opt) {
  const auto inst = instanceFromJson(in);
  const SteinerInstance steiner(inst.a, inst.b, inst.pool);
  const double lower = hausdorffDistance(inst.a, inst.b);
  const auto exact = d1Exact(steiner, opt.caps);
  const auto upper = mstUpperBound(steiner, opt.caps);
  return {{"hausdorff", lower},
          {"d1", exact.value},
          {"mstUpper", upper.value},
          {"bounds", {lower, exact.value, upper.value}},
          {"exactness", exactness(steiner)},
          {"certificates",
           {{"d1", json_io::certificateToJson(exact.certificate)},
            {"mstUpper", json_io::certificateToJson(upper.certificate)}}}};
}

json runWalk(const json& in, const RunOptions&) {
  const auto space = json_io::spaceFromJson(in);
  if (!in.contains("graph")) throw Error(ErrorCode::ParseError, "missing key \"graph\"");
  const auto tree = json_io::graphFromJson(space, in.at("graph"));
  const auto walk = doublingWalk(tree);
  return {{"walk", walk.sequence},
          {"walkLength", walk.length},
          {"treeLength", tree.totalLength()},
          {"edgeTraversals", edgeTraversals(walk)}};
}

json runDimEstimate(const json& in, const RunOptions& opt) {
  const auto space = json_io::spaceFromJson(in);
  std::vector<PointIndex> members;
  if (in.contains("members")) {
    members = get<std::vector<PointIndex>>(in, "members");
  } else {
    members.resize(space->size());
    std::iota(members.begin(), members.end(), PointIndex{0});
  }
  const PointSet points(space, members);
  std::vector<double> ladder;
  if (in.contains("ladder")) {
    ladder = get<std::vector<double>>(in, "ladder");
  } else {
    for (int k = 2; k <= 8; ++k) ladder.push_back(std::ldexp(1.0, -k));
  }
  const auto est = boxDimensionEstimate(points, ladder);
  json rows = json::array();
  for (std::size_t i = 0; i < est.epsilons.size(); ++i)
    rows.push_back({{"epsilon", est.epsilons[i]}, {"count", est.counts[i].count}, {"exact", est.counts[i].exact}});
  json out{{"slope", est.slope}, {"ladder", rows}, {"diagnostic", true}};
  if (opt.epsilon) {
    const auto cover = coveringNumber(points, *opt.epsilon);
    out["covering"] = {{"epsilon", *opt.epsilon}, {"count", cover.count}, {"exact", cover.exact}};
  }
  return out;
}

json runCertify(const json& in, const RunOptions& opt) {
  const auto sys = json_io::systemFromJson(in);
  const double epsilon = opt.epsilon.value_or(0.1);
  const std::size_t maxDepth = opt.depth.value_or(20);
  const std::size_t window = in.contains("window") ? get<std::size_t>(in, "window") : kDefaultWindowLevels;
  const auto outcome = certifyZeroLength(sys, epsilon, maxDepth, window);
  if (const auto* refusal = std::get_if<Refusal>(&outcome))
    return {{"status", "refused"}, {"reason", refusal->reason}, {"levelMeasures", refusal->levelMeasures}};

  const auto& cert = std::get<ZeroLengthCertificate>(outcome);
  json levels = json::array();
  for (const auto& s : cert.windowLevels)
    levels.push_back({{"level", s.level},
                      {"intervalEdges", s.intervalEdges},
                      {"linkEdges", s.linkEdges},
                      {"gapEdges", s.gapEdges},
                      {"length", s.length}});
  json verify = json_io::spaceToJson(*cert.endpointSpace);
  verify["A"] = cert.sample;
  verify["B"] = cert.sample;
  verify["certificate"] = json_io::graphToJson(cert.graph.graph);
  return {{"status", "certified"},
          {"epsilon", cert.targetEpsilon},
          {"startLevel", cert.startLevel},
          {"endLevel", cert.endLevel},
          {"levelMeasures", cert.levelMeasures},
          {"measureBound", cert.measureBound},
          {"windowLength", cert.windowLength},
          {"tailBound", cert.tailBound},
          {"totalLengthBound", cert.totalLengthBound},
          {"windowLevels", levels},
          {"componentCount", cert.graph.componentCount},
          {"hausdorffCover", {{"balls", cert.coverCount}, {"radiusSum", cert.coverRadiusSum}}},
          {"nestingOnlyChecked", cert.nestingOnlyChecked},
          {"verifyInstance", verify}};
}

json runD1Compact(const json& in, const RunOptions& opt) {
  if (!in.is_object() || !in.contains("A") || !in.contains("B"))
    throw Error(ErrorCode::ParseError, "d1-compact expects {\"A\": generator, \"B\": generator}");
  const auto sysA = json_io::systemFromJson(in.at("A"));
  const auto sysB = json_io::systemFromJson(in.at("B"));
  const std::size_t depth = opt.depth.value_or(10);
  const auto br = d1CompactApprox(sysA, sysB, depth);
  return {{"depth", depth},
          {"lower", br.lower},
          {"upper", br.upper},
          {"sampleDistance", br.sampleDistance},
          {"errorA", br.errorA},
          {"errorB", br.errorB}};
}

json runCauchy(const json& in, const RunOptions& opt) {
  const auto sys = json_io::systemFromJson(in);
  std::vector<std::size_t> depths;
  if (in.contains("depths")) {
    depths = get<std::vector<std::size_t>>(in, "depths");
  } else {
    for (std::size_t k = 1; k <= opt.depth.value_or(10); ++k) depths.push_back(k);
  }
  const auto rows = cauchyDemo(sys, depths, !opt.diagnostic);
  json table = json::array();
  bool all = true;
  double envelopeSum = 0.0;
  for (const auto& r : rows) {
    table.push_back({{"from", r.fromDepth},
                     {"to", r.toDepth},
                     {"distance", r.distance},
                     {"envelope", r.envelope},
                     {"withinEnvelope", r.withinEnvelope}});
    all = all && r.withinEnvelope;
    envelopeSum += r.envelope;
  }
  return {{"rows", table}, {"allWithinEnvelope", all}, {"envelopeSum", envelopeSum}, {"diagnostic", opt.diagnostic}};
}

json runVerify(const json& in, const RunOptions&) {
  const auto inst = instanceFromJson(in);
  if (!in.contains("certificate")) throw Error(ErrorCode::ParseError, "--verify needs a \"certificate\" graph");
  const auto graph = json_io::graphFromJson(inst.space, in.at("certificate"));
  const auto cert = validateCertificate(inst.a, inst.b, graph);
  json out = json_io::certificateToJson(cert);
  out["verified"] = true;
  return out;
}

// --- selftest -------------------------------------------------------------

SpacePtr randomMatrixSpace(std::mt19937_64& rng, std::size_t n) {
  // Shortest-path closure of random edge weights is always a metric.
  std::uniform_real_distribution<double> w(1.0, 10.0);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = w(rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return MetricSpace::finiteMatrix(d);
}

std::vector<PointIndex> randomSubset(std::mt19937_64& rng, std::size_t n) {
  std::vector<PointIndex> out;
  while (out.empty())
    for (PointIndex i = 0; i < n; ++i)
      if (rng() & 1U) out.push_back(i);
  return out;
}

json runSelftest(const json& in, const RunOptions& opt) {
  const std::size_t lineCount = in.is_object() && in.contains("lineInstances") ? get<std::size_t>(in, "lineInstances") : 2000;
  const std::size_t generalCount =
      in.is_object() && in.contains("generalInstances") ? get<std::size_t>(in, "generalInstances") : 200;
  std::mt19937_64 rng(opt.seed);
  const double tol = 1e-12;

  std::size_t lineMismatch = 0;
  for (std::size_t it = 0; it < lineCount; ++it) {
    const std::size_t n = 2 + rng() % 11;
    std::vector<double> xs(n);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    for (auto& x : xs) x = coord(rng);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    const auto space = MetricSpace::realLine(xs);
    const PointSet a(space, randomSubset(rng, xs.size())), b(space, randomSubset(rng, xs.size()));
    const double fast = d1Line(a, b).value;
    if (std::abs(fast - d1LineBruteForce(a, b)) > tol || std::abs(fast - d1LineQuadratic(a, b)) > tol)
      ++lineMismatch;
  }

  std::size_t generalMismatch = 0;
  for (std::size_t it = 0; it < generalCount; ++it) {
    const std::size_t n = 2 + rng() % (opt.caps.oracleCap - 1);
    const auto space = randomMatrixSpace(rng, n);
    const PointSet a(space, randomSubset(rng, n)), b(space, randomSubset(rng, n));
    std::vector<PointIndex> pool(n);
    std::iota(pool.begin(), pool.end(), PointIndex{0});
    const SteinerInstance inst(a, b, pool);
    if (std::abs(d1Exact(inst, opt.caps).value - d1BruteForce(inst, opt.caps)) > tol) ++generalMismatch;
  }

  const bool passed = lineMismatch == 0 && generalMismatch == 0;
  return {{"passed", passed},
          {"seed", opt.seed},
          {"suites",
           {{{"name", "line-oracle"}, {"instances", lineCount}, {"mismatches", lineMismatch}},
            {{"name", "general-oracle"}, {"instances", generalCount}, {"mismatches", generalMismatch}}}}};
}

using Handler = json (*)(const json&, const RunOptions&);

struct CommandEntry {
  const char* name;
  Handler handler;
};

constexpr CommandEntry kCommands[] = {
    {"hausdorff", runHausdorff},     {"d1-line", runD1Line},
    {"d1-exact", runD1Exact},        {"d1-bounds", runD1Bounds},
    {"walk", runWalk},               {"dim-estimate", runDimEstimate},
    {"certify-zero-length", runCertify}, {"d1-compact", runD1Compact},
    {"cauchy-demo", runCauchy},      {"selftest", runSelftest},
};

Handler findHandler(std::string_view command, const RunOptions& opt) {
  for (const auto& entry : kCommands)
    if (command == entry.name) return (opt.verify && command != "selftest") ? runVerify : entry.handler;
  throw Error(ErrorCode::InvalidArgument, "unknown command \"" + std::string(command) + "\"");
}

json runBatch(Handler handler, const json& items, const RunOptions& opt) {
  const std::size_t n = items.size();
  std::vector<json> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        results[i] = handler(items[i], opt);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(opt.jobs, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return json(std::move(results));
}

}  // namespace

const char* libraryVersion() noexcept { return HYPERD1_VERSION; }

const std::vector<std::string>& knownCommands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : kCommands) out.emplace_back(entry.name);
    return out;
  }();
  return names;
}

bool isKnownCommand(std::string_view command) {
  const auto& names = knownCommands();
  return std::find(names.begin(), names.end(), command) != names.end();
}

std::string inputDigest(const json& input) {
  const std::string text = input.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::InvalidArgument, "sha256 digest failed");
  std::string hex;
  hex.reserve(2 * length);
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return "sha256:" + hex;
}

json runCommand(std::string_view command, const json& input, const RunOptions& options) {
  const Handler handler = findHandler(command, options);
  const auto started = std::chrono::steady_clock::now();
  json result = (input.is_array() && command != "selftest") ? runBatch(handler, input, options)
                                                            : handler(input, options);
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
  json report{{"command", std::string(command)},
              {"version", libraryVersion()},
              {"inputDigest", inputDigest(input)},
              {"result", std::move(result)}};
  if (options.timing) report["elapsedMs"] = elapsed.count();
  return report;
}

}  // namespace hyperd1
