#include "streamodt/snapshot.hpp"

#include <algorithm>

namespace streamodt {

using nlohmann::json;

namespace {

json config_to_json(const FastODTConfig& cfg) {
    return json{{"max_depth", cfg.max_depth},
                {"delta", cfg.delta},
                {"tie_tau", cfg.tie_tau},
                {"grace_period", cfg.grace_period},
                {"max_bins", cfg.max_bins},
                {"leaf_updates_after_growth", cfg.leaf_updates_after_growth}};
}

FastODTConfig config_from_json(const json& j) {
    FastODTConfig cfg;
    cfg.max_depth = j.at("max_depth").get<int>();
    cfg.delta = j.at("delta").get<double>();
    cfg.tie_tau = j.at("tie_tau").get<double>();
    cfg.grace_period = j.at("grace_period").get<int>();
    cfg.max_bins = j.at("max_bins").get<int>();
    cfg.leaf_updates_after_growth = j.at("leaf_updates_after_growth").get<bool>();
    return cfg;
}

json stats_to_json(const NodeStats& stats) {
    json hists = json::array();
    for (std::size_t f = 0; f < stats.n_features(); ++f) {
        json bins = json::array();
        for (const auto& b : stats.feature_histogram(f).bins())
            bins.push_back(json::array({b.centroid, b.count, b.target_sum, b.target_sum_sq}));
        hists.push_back(std::move(bins));
    }
    return json{{"n", stats.count()},          {"sum", stats.target_sum()},
                {"sum_sq", stats.target_sum_sq()}, {"min", stats.target_min()},
                {"max", stats.target_max()},   {"histograms", std::move(hists)}};
}

std::unique_ptr<NodeStats> stats_from_json(const json& j, std::size_t n_features,
                                           std::size_t max_bins) {
    auto stats = std::make_unique<NodeStats>(n_features, max_bins);
    const auto& hists = j.at("histograms");
    if (hists.size() != n_features) throw DataError("snapshot stats feature count mismatch");
    for (std::size_t f = 0; f < n_features; ++f) {
        std::vector<HistogramBin> bins;
        bins.reserve(hists[f].size());
        for (const auto& b : hists[f]) {
            bins.push_back(HistogramBin{b.at(0).get<double>(), b.at(1).get<std::uint64_t>(),
                                        b.at(2).get<double>(), b.at(3).get<double>()});
        }
        if (bins.size() > max_bins) throw DataError("snapshot histogram exceeds max_bins");
        stats->feature_histogram(f).restore(std::move(bins));
    }
    stats->restore_moments(j.at("n").get<std::uint64_t>(), j.at("sum").get<double>(),
                           j.at("sum_sq").get<double>(), j.at("min").get<double>(),
                           j.at("max").get<double>());
    return stats;
}

void require_format(const json& j, const char* format) {
    if (j.at("format").get<std::string>() != format)
        throw DataError(std::string("snapshot format mismatch, expected ") + format);
    if (j.at("version").get<int>() != kSnapshotVersion)
        throw DataError("unsupported snapshot version");
}

} // namespace

json to_snapshot(const FastODT& tree) {
    json splits = json::array();
    for (const auto& rule : tree.splits())
        splits.push_back(json{{"feature", rule.feature_index}, {"threshold", rule.threshold}});

    std::vector<std::uint64_t> keys;
    keys.reserve(tree.raw_nodes().size());
    for (const auto& [key, node] : tree.raw_nodes()) keys.push_back(key);
    std::sort(keys.begin(), keys.end());

    json nodes = json::array();
    for (const std::uint64_t key : keys) {
        const TreeNode& node = tree.raw_nodes().at(key);
        json entry{{"depth", FastODT::key_depth(key)},
                   {"index", FastODT::key_index(key)},
                   {"count", node.value_count},
                   {"sum", node.value_sum}};
        if (node.stats) entry["stats"] = stats_to_json(*node.stats);
        nodes.push_back(std::move(entry));
    }

    return json{{"format", "fastodt-tree"},
                {"version", kSnapshotVersion},
                {"n_features", tree.n_features()},
                {"config", config_to_json(tree.config())},
                {"splits", std::move(splits)},
                {"nodes", std::move(nodes)}};
}

FastODT tree_from_snapshot(const json& j) {
    require_format(j, "fastodt-tree");
    const auto n_features = j.at("n_features").get<std::size_t>();
    const FastODTConfig cfg = config_from_json(j.at("config"));
    FastODT tree(n_features, cfg);

    for (const auto& s : j.at("splits"))
        tree.restore_split(SplitRule{s.at("feature").get<int>(), s.at("threshold").get<double>()});

    for (const auto& n : j.at("nodes")) {
        TreeNode& node = tree.restore_node(n.at("depth").get<int>(), n.at("index").get<std::uint64_t>());
        node.value_count = n.at("count").get<std::uint64_t>();
        node.value_sum = n.at("sum").get<double>();
        if (n.contains("stats"))
            node.stats = stats_from_json(n.at("stats"), n_features,
                                         static_cast<std::size_t>(cfg.max_bins));
    }
    return tree;
}

json to_snapshot(const IncubationEnsemble& ensemble) {
    const auto& cfg = ensemble.config();
    json chain = json::array();
    for (std::size_t i = 0; i < ensemble.chain_size(); ++i) {
        const auto& tracker = ensemble.chain_tracker(i);
        chain.push_back(json{{"tree", to_snapshot(ensemble.chain_tree(i))},
                             {"tracker", json{{"ewma", tracker.value()},
                                              {"updates", tracker.updates()}}}});
    }
    json j{{"format", "incubation-ensemble"},
           {"version", kSnapshotVersion},
           {"n_features", ensemble.n_features()},
           {"config", json{{"learning_rate", cfg.learning_rate},
                           {"max_trees", cfg.max_trees},
                           {"tracker_alpha", cfg.tracker_alpha},
                           {"prune_grace", cfg.prune_grace},
                           {"tree", config_to_json(cfg.tree)}}},
           {"chain", std::move(chain)}};
    j["incubator"] = ensemble.incubator() ? to_snapshot(*ensemble.incubator()) : json(nullptr);
    return j;
}

IncubationEnsemble boost_from_snapshot(const json& j) {
    require_format(j, "incubation-ensemble");
    const auto& jc = j.at("config");
    IncubationConfig cfg;
    cfg.learning_rate = jc.at("learning_rate").get<double>();
    cfg.max_trees = jc.at("max_trees").get<int>();
    cfg.tracker_alpha = jc.at("tracker_alpha").get<double>();
    cfg.prune_grace = jc.at("prune_grace").get<int>();
    cfg.tree = config_from_json(jc.at("tree"));

    IncubationEnsemble ensemble(j.at("n_features").get<std::size_t>(), cfg);
    for (const auto& m : j.at("chain")) {
        TreeErrorTracker tracker(cfg.tracker_alpha);
        tracker.restore(m.at("tracker").at("ewma").get<double>(),
                        m.at("tracker").at("updates").get<std::uint64_t>());
        ensemble.restore_chain_member(tree_from_snapshot(m.at("tree")), tracker);
    }
    if (!j.at("incubator").is_null())
        ensemble.restore_incubator(tree_from_snapshot(j.at("incubator")));
    return ensemble;
}

json to_snapshot(const ArfEnsemble& ensemble) {
    const auto& cfg = ensemble.config();
    json members = json::array();
    for (std::size_t i = 0; i < ensemble.n_members(); ++i) {
        auto st = ensemble.export_member(i);
        json m{{"tree", to_snapshot(st.tree)},
               {"mask", st.mask},
               {"background", st.background ? to_snapshot(*st.background) : json(nullptr)},
               {"background_mask", st.background_mask},
               {"detector", json{{"warm_n", st.detector.warm_n},
                                 {"warm_mean", st.detector.warm_mean},
                                 {"warm_m2", st.detector.warm_m2},
                                 {"calibrated", st.detector.calibrated},
                                 {"lambda", st.detector.lambda},
                                 {"delta", st.detector.delta},
                                 {"n", st.detector.n},
                                 {"mean", st.detector.mean},
                                 {"cum", st.detector.cum},
                                 {"cum_min", st.detector.cum_min}}},
               {"rng", st.rng_state}};
        members.push_back(std::move(m));
    }
    return json{{"format", "arf-ensemble"},
                {"version", kSnapshotVersion},
                {"n_features", ensemble.n_features()},
                {"replacements", ensemble.replacement_count()},
                {"config", json{{"n_members", cfg.n_members},
                                {"poisson_lambda", cfg.poisson_lambda},
                                {"drift", cfg.drift == DriftMethod::page_hinkley ? "page_hinkley" : "none"},
                                {"ph", json{{"lambda_factor", cfg.page_hinkley.lambda_factor},
                                            {"delta_factor", cfg.page_hinkley.delta_factor},
                                            {"warning_factor", cfg.page_hinkley.warning_factor},
                                            {"warmup", cfg.page_hinkley.warmup}}},
                                {"tree", config_to_json(cfg.tree)}}},
                {"members", std::move(members)}};
}

ArfEnsemble arf_from_snapshot(const json& j) {
    require_format(j, "arf-ensemble");
    const auto& jc = j.at("config");
    ArfConfig cfg;
    cfg.n_members = jc.at("n_members").get<int>();
    cfg.poisson_lambda = jc.at("poisson_lambda").get<double>();
    cfg.drift = jc.at("drift").get<std::string>() == "none" ? DriftMethod::none
                                                            : DriftMethod::page_hinkley;
    cfg.page_hinkley.lambda_factor = jc.at("ph").at("lambda_factor").get<double>();
    cfg.page_hinkley.delta_factor = jc.at("ph").at("delta_factor").get<double>();
    cfg.page_hinkley.warning_factor = jc.at("ph").at("warning_factor").get<double>();
    cfg.page_hinkley.warmup = jc.at("ph").at("warmup").get<int>();
    cfg.tree = config_from_json(jc.at("tree"));

    const auto n_features = j.at("n_features").get<std::size_t>();
    ArfEnsemble ensemble(n_features, cfg, 0); // member state is overwritten below

    const auto& members = j.at("members");
    if (members.size() != static_cast<std::size_t>(cfg.n_members))
        throw DataError("snapshot member count mismatch");
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto& m = members[i];
        ArfEnsemble::MemberState st{
            tree_from_snapshot(m.at("tree")),
            m.at("mask").get<std::vector<std::size_t>>(),
            std::nullopt,
            m.at("background_mask").get<std::vector<std::size_t>>(),
            PageHinkley::State{},
            m.at("rng").get<std::string>()};
        if (!m.at("background").is_null())
            st.background = tree_from_snapshot(m.at("background"));
        const auto& d = m.at("detector");
        st.detector.warm_n = d.at("warm_n").get<std::uint64_t>();
        st.detector.warm_mean = d.at("warm_mean").get<double>();
        st.detector.warm_m2 = d.at("warm_m2").get<double>();
        st.detector.calibrated = d.at("calibrated").get<bool>();
        st.detector.lambda = d.at("lambda").get<double>();
        st.detector.delta = d.at("delta").get<double>();
        st.detector.n = d.at("n").get<std::uint64_t>();
        st.detector.mean = d.at("mean").get<double>();
        st.detector.cum = d.at("cum").get<double>();
        st.detector.cum_min = d.at("cum_min").get<double>();
        ensemble.import_member(i, std::move(st));
    }
    ensemble.restore_replacements(j.at("replacements").get<std::uint64_t>());
    return ensemble;
}

} // namespace streamodt
