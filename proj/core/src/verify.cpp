#include "weighwright/verify.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace weighwright {

const char* to_string(DefectKind k) {
  switch (k) {
    case DefectKind::Misclassified: return "misclassified";
    case DefectKind::MissingChild: return "missing_child";
    case DefectKind::DepthExceeded: return "depth_exceeded";
    case DefectKind::UniformLate: return "uniform_late";
    case DefectKind::GammaTooLarge: return "gamma_too_large";
  }
  return "unknown";
}

VerifyOptions VerifyOptions::eleven_coin() {
  VerifyOptions o;
  o.depth_budget = 7;
  o.uniform_deadline = 6;
  o.gamma_depth = 6;
  return o;
}

std::string VerificationReport::summary() const {
  return std::to_string(correct) + "/" + std::to_string(total_cases) + " correct, depth " + std::to_string(max_depth);
}

VerificationReport verify_tree(const DecisionTree& t, const HypothesisSet& hypotheses, const VerifyOptions& options) {
  VerificationReport r;
  const FakeSet full = FakeSet::full(t.universe());
  std::unordered_map<NodeId, std::unordered_set<std::size_t>> gamma;  // node -> class indices
  std::unordered_map<NodeId, Path> gamma_path;
  const auto classes = hypotheses.classes();

  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const HypothesisClass& cls = classes[ci];
    const FakeSet members[2] = {cls.primary, cls.twin};
    for (int mi = 0; mi < (cls.merged() ? 2 : 1); ++mi) {
      const FakeSet s = members[mi];
      ++r.total_cases;
      NodeId id = t.root();
      Path path;
      int used = 0;
      bool missing = false;
      bool depth_flagged = false;
      for (;;) {
        if (options.gamma_depth && used == *options.gamma_depth && !gamma[id].count(ci)) {
          gamma[id].insert(ci);
          gamma_path.emplace(id, path);
        }
        if (t.is_leaf(id)) break;
        const auto& in = t.internal(id);
        if (!in.weighing.is_noop()) {
          ++used;
          if (options.depth_budget && used > *options.depth_budget && !depth_flagged) {
            r.defects.push_back({path, DefectKind::DepthExceeded, "fake set " + s.to_string()});
            depth_flagged = true;
          }
        }
        const Outcome o = weigh(s, in.weighing);
        path.push_back(o);
        const NodeId next = in.children[static_cast<std::size_t>(digit(o))];
        if (next == kNoNode) {
          missing = true;
          break;
        }
        id = next;
      }
      r.max_depth = std::max(r.max_depth, used);
      if (missing) {
        r.defects.push_back({path, DefectKind::MissingChild, "fake set " + s.to_string()});
        continue;
      }
      if (t.leaf(id).claims(cls)) {
        ++r.correct;
      } else {
        r.defects.push_back(
            {path, DefectKind::Misclassified, "fake set " + s.to_string() + " reaches " + t.leaf(id).to_string()});
      }
    }
  }

  if (options.gamma_depth) {
    for (const auto& [id, set] : gamma) {
      r.max_gamma = std::max(r.max_gamma, static_cast<int>(set.size()));
      if (static_cast<int>(set.size()) > options.gamma_limit)
        r.defects.push_back({gamma_path[id], DefectKind::GammaTooLarge, std::to_string(set.size()) + " classes"});
    }
  }

  // All-zero path: narrow the member set until only the extremes remain.
  {
    std::vector<FakeSet> alive;
    for (const auto& c : classes) {
      alive.push_back(c.primary);
      if (c.merged()) alive.push_back(c.twin);
    }
    auto extremes_only = [&] {
      return !alive.empty() && std::all_of(alive.begin(), alive.end(), [&](FakeSet s) { return s.empty() || s == full; });
    };
    NodeId id = t.root();
    Path path;
    int used = 0;
    for (;;) {
      if (extremes_only()) {
        r.uniform_resolved_by = used;
        break;
      }
      if (id == kNoNode || t.is_leaf(id)) break;
      const Weighing& w = t.internal(id).weighing;
      if (!w.is_noop()) ++used;
      std::erase_if(alive, [&](FakeSet s) { return weigh(s, w) != Outcome::Balance; });
      path.push_back(Outcome::Balance);
      id = t.internal(id).children[0];
    }
    const bool tracks_uniform = std::any_of(classes.begin(), classes.end(), [](const auto& c) { return c.primary.empty(); });
    if (options.uniform_deadline && tracks_uniform &&
        (!r.uniform_resolved_by || *r.uniform_resolved_by > *options.uniform_deadline)) {
      r.defects.push_back({Path(static_cast<std::size_t>(*options.uniform_deadline), Outcome::Balance),
                           DefectKind::UniformLate,
                           r.uniform_resolved_by ? "resolved after " + std::to_string(*r.uniform_resolved_by)
                                                 : std::string("never resolved")});
    }
  }
  return r;
}

VerificationReport verify_tree(const DecisionTree& t, Semantics semantics, const VerifyOptions& options) {
  return verify_tree(t, HypothesisSet::full(t.universe(), semantics), options);
}

}  // namespace weighwright
