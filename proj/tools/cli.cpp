// Copyright (C) 2026 The LCS Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lcs/error.hpp"
#include "lcs/io.hpp"
#include "lcs/palette.hpp"
#include "lcs/toyflow.hpp"

namespace lcs::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kBuiltinStats = "flux-builtin";
constexpr const char* kLatentExt = ".lcst";

struct GlobalFlags {
    std::uint64_t seed = 0;
    std::uint64_t embed_seed = toy::EmbedderConfig{}.seed;
    std::string stats = kBuiltinStats;
    std::string model = "model.json";
    std::string anchors = "anchors.json";
};

struct Context {
    const GlobalFlags& flags;
    std::ostream& out;
};

StatsTable load_stats(const GlobalFlags& g) {
    if (g.stats == kBuiltinStats)
        return builtin_flux_stats();
    return io::stats_from_json(io::read_text(g.stats));
}

SubspaceModel load_model(const GlobalFlags& g) { return io::model_from_json(io::read_text(g.model)); }
AnchorSet load_anchors(const GlobalFlags& g) { return io::anchors_from_json(io::read_text(g.anchors)); }

toy::ToyEmbedder make_embedder(const GlobalFlags& g) {
    toy::EmbedderConfig config;
    config.seed = g.embed_seed;
    return toy::ToyEmbedder(config);
}

GridDims parse_grid(const std::string& text) {
    const auto x = text.find('x');
    require(x != std::string::npos, "grid must look like HxW");
    try {
        std::size_t used = 0;
        const unsigned long h = std::stoul(text.substr(0, x), &used);
        require(used == x, "grid must look like HxW");
        const std::string rest = text.substr(x + 1);
        const unsigned long w = std::stoul(rest, &used);
        require(used == rest.size() && h > 0 && w > 0, "grid must look like HxW with positive sides");
        return {h, w};
    } catch (const std::logic_error&) {
        throw Error("grid must look like HxW");
    }
}

// Square grids when L is a perfect square, otherwise a single row.
GridDims grid_for(const LatentTensor& z, const std::string& requested) {
    if (!requested.empty())
        return parse_grid(requested);
    const auto n = static_cast<std::size_t>(z.patches());
    const auto side = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n))));
    if (side * side == n)
        return {side, side};
    return {1, n};
}

HslColor parse_target(const std::string& hex, const std::string& hsl) {
    require(hex.empty() != hsl.empty(), "give exactly one of --target or --hsl");
    if (!hex.empty())
        return rgb_to_hsl(parse_hex_color(hex));
    std::stringstream ss(hsl);
    std::string part;
    std::vector<double> v;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(part, &used));
            require(used == part.size(), "bad --hsl component: " + part);
        } catch (const std::logic_error&) {
            throw Error("bad --hsl component: " + part);
        }
    }
    require(v.size() == 3, "--hsl needs h,s,l");
    require(v[1] >= 0.0 && v[1] <= 1.0 && v[2] >= 0.0 && v[2] <= 1.0, "--hsl saturation and lightness must be in [0,1]");
    return {v[0], v[1], v[2]};
}

std::string slug(std::string_view name) {
    std::string s;
    for (char c : name)
        s += c == ' ' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string frame_name(int t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "t%03d%s", t, kLatentExt);
    return buf;
}

json color_report(const HslColor& mean, const HslColor& target) {
    const HslError e = hsl_error(mean, target);
    return {{"mean_hsl", {mean.h, mean.s, mean.l}},
            {"de00", ciede2000(hsl_to_lab(mean), hsl_to_lab(target))},
            {"dH_deg", e.dH},
            {"dS_pct", 100.0 * e.dS},
            {"dL_pct", 100.0 * e.dL}};
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    require(!ec && fs::is_directory(dir), "cannot create directory " + dir.string());
}

// -- fit ---------------------------------------------------------------------

struct FitArgs {
    std::string dir;
};

int cmd_fit(const Context& ctx, const FitArgs& a) {
    require(fs::is_directory(a.dir), "not a directory: " + a.dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(a.dir))
        if (entry.is_regular_file() && entry.path().extension() == kLatentExt)
            files.push_back(entry.path());
    require(!files.empty(), "no " + std::string(kLatentExt) + " files in " + a.dir);
    std::sort(files.begin(), files.end());

    RowMatrix samples;
    std::vector<LabeledProbe> probes;
    for (std::size_t i = 0; i < files.size(); ++i) {
        const Eigen::VectorXd v = average_patches(io::load_latent(files[i]));
        if (i == 0)
            samples.resize(static_cast<Eigen::Index>(files.size()), v.size());
        require(v.size() == samples.cols(), "latent dimension differs in " + files[i].string());
        samples.row(static_cast<Eigen::Index>(i)) = v.transpose();
        if (const auto label = parse_anchor_label(files[i].stem().string()))
            probes.push_back({*label, v});
    }

    auto find = [&](AnchorLabel label) -> const Eigen::VectorXd& {
        for (const LabeledProbe& p : probes)
            if (p.label == label)
                return p.latent;
        throw Error("missing anchor probe file " + std::string(to_string(label)) + kLatentExt);
    };
    const OrientationProbes orient{find(AnchorLabel::white), find(AnchorLabel::black), find(AnchorLabel::red),
                                   find(AnchorLabel::yellow)};
    const PcaResult pca = fit_pca(samples, orient);
    const AnchorSet anchors = build_anchors(probes, pca.model);

    io::write_text_atomic(ctx.flags.model, io::model_to_json(pca.model));
    io::write_text_atomic(ctx.flags.anchors, io::anchors_to_json(anchors));
    const auto& r = pca.model.explained();
    ctx.out << "samples " << files.size() << "\nexplained " << r[0] << ' ' << r[1] << ' ' << r[2] << "\ntotal "
            << r[0] + r[1] + r[2] << '\n';
    return kOk;
}

// -- observe -----------------------------------------------------------------

struct ObserveArgs {
    std::string latent;
    int t = 0;
    std::string out;
    std::string grid;
    std::size_t cell_px = 1;
};

int cmd_observe(const Context& ctx, const ObserveArgs& a) {
    const StatsTable stats = load_stats(ctx.flags);
    require(stats.contains(a.t), "timestep " + std::to_string(a.t) + " is not in the stats table");
    const LatentTensor z = io::load_latent(a.latent);
    const ColorGrid grid =
        observe(z, a.t, load_model(ctx.flags), load_anchors(ctx.flags), stats, grid_for(z, a.grid));
    io::write_file_atomic(a.out + ".ppm", render_ppm(grid, a.cell_px));
    io::write_text_atomic(a.out + ".json", io::grid_to_json(grid));
    ctx.out << "grid " << grid.height() << 'x' << grid.width() << " t=" << a.t << '\n';
    return kOk;
}

// -- intervene ---------------------------------------------------------------

struct InterveneArgs {
    std::string latent;
    int t = 0;
    std::string target;
    std::string hsl;
    std::string mask;
    std::string mode = "interp";
    std::string out;
    std::string report;
    std::string grid;
};

int cmd_intervene(const Context& ctx, const InterveneArgs& a) {
    const HslColor target = parse_target(a.target, a.hsl);
    const InterventionMode mode = parse_intervention_mode(a.mode);
    const StatsTable stats = load_stats(ctx.flags);
    require(stats.contains(a.t), "timestep " + std::to_string(a.t) + " is not in the stats table");
    const SubspaceModel model = load_model(ctx.flags);
    const AnchorSet anchors = load_anchors(ctx.flags);
    const LatentTensor z = io::load_latent(a.latent);
    const auto patches = static_cast<std::size_t>(z.patches());
    const PatchMask mask = a.mask.empty() ? PatchMask::all(patches) : io::load_mask(a.mask);
    require(!mask.empty(), "intervention mask is empty");

    const InterventionContext ictx{model, anchors, stats, Schedule{stats.final_timestep(), ScheduleKind::linear}};
    const LatentTensor edited = apply_intervention(z, a.t, target, mask, ictx, mode);
    io::save_latent(a.out, edited);

    const GridDims dims = grid_for(z, a.grid);
    const HslColor before = masked_mean_color(observe(z, a.t, model, anchors, stats, dims), mask);
    const HslColor after = masked_mean_color(observe(edited, a.t, model, anchors, stats, dims), mask);
    const json report = {{"t", a.t},
                         {"mode", to_string(mode)},
                         {"target_hsl", {target.h, target.s, target.l}},
                         {"masked_patches", mask.selected().size()},
                         {"before", color_report(before, target)},
                         {"after", color_report(after, target)}};
    const std::string text = report.dump(2) + "\n";
    if (!a.report.empty())
        io::write_text_atomic(a.report, text);
    ctx.out << text;
    return kOk;
}

// -- simulate ----------------------------------------------------------------

struct SimulateArgs {
    std::string kind;
    std::string out;
    std::string grid = "8x8";
    int steps = 50;
    std::string attractors;
    std::string from;
    int from_t = 0;
};

io::TrajectoryRecord write_frames(const fs::path& root, const std::string& name, const fs::path& sub,
                                  const std::vector<LatentTensor>& frames, int first_t) {
    ensure_dir(root / sub);
    io::TrajectoryRecord rec{name, {}, {}};
    for (std::size_t k = 0; k < frames.size(); ++k) {
        const int t = first_t + static_cast<int>(k);
        const fs::path rel = sub / frame_name(t);
        io::save_latent(root / rel, frames[k]);
        rec.timesteps.push_back(t);
        rec.files.push_back(rel.generic_string());
    }
    return rec;
}

int simulate_probes(const Context& ctx, const SimulateArgs& a) {
    const toy::ProbeSet probes = toy::make_probe_set(make_embedder(ctx.flags));
    const fs::path root(a.out);
    ensure_dir(root);
    auto one_row = [](const Eigen::VectorXd& v) { return LatentTensor(RowMatrix(v.transpose())); };
    for (const LabeledProbe& p : probes.anchors)
        io::save_latent(root / (std::string(to_string(p.label)) + kLatentExt), one_row(p.latent));
    for (Eigen::Index i = 0; i < probes.lattice.rows(); ++i) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "lattice_%03d", static_cast<int>(i));
        io::save_latent(root / (buf + std::string(kLatentExt)), one_row(probes.lattice.row(i).transpose()));
    }
    ctx.out << "probes " << probes.anchors.size() << " lattice " << probes.lattice.rows() << '\n';
    return kOk;
}

int simulate_palette(const Context& ctx, const SimulateArgs& a) {
    const GridDims dims = parse_grid(a.grid);
    const toy::FlowOptions options{a.steps, 0.0};
    const auto runs = toy::simulate_palette(make_embedder(ctx.flags), dims, options, ctx.flags.seed);
    const fs::path root(a.out);
    ensure_dir(root);
    io::TrajectoryManifest manifest{a.steps, dims.height, dims.width, {}};
    for (std::size_t k = 0; k < runs.size(); ++k) {
        char prefix[8];
        std::snprintf(prefix, sizeof prefix, "%02zu_", k);
        manifest.trajectories.push_back(
            write_frames(root, runs[k].name, prefix + slug(runs[k].name), runs[k].frames, 0));
    }
    io::write_text_atomic(root / "manifest.json", io::manifest_to_json(manifest));
    ctx.out << "trajectories " << runs.size() << " steps " << a.steps << '\n';
    return kOk;
}

int simulate_field(const Context& ctx, const SimulateArgs& a) {
    require(!a.attractors.empty(), "simulate field needs --attractors");
    const toy::ToyEmbedder e = make_embedder(ctx.flags);
    const GridDims dims = parse_grid(a.grid);
    std::vector<LatentTensor> attractors;
    std::stringstream ss(a.attractors);
    std::string hex;
    while (std::getline(ss, hex, ','))
        attractors.push_back(
            toy::embed_image(ColorGrid::filled(dims.height, dims.width, rgb_to_hsl(parse_hex_color(hex))), e));
    const toy::AttractorField field(std::move(attractors), e.lift());
    const toy::FlowOptions options{a.steps, 0.0};

    int start = 0;
    std::optional<LatentTensor> z;
    if (!a.from.empty()) {
        start = a.from_t;
        z = io::load_latent(a.from);
    } else {
        z = toy::gaussian_latent(static_cast<Eigen::Index>(dims.height * dims.width), e.dim(), ctx.flags.seed);
    }
    require(start >= 0 && start <= a.steps, "--from-t outside [0, steps]");
    const auto frames = toy::integrate(*z, start, field, options);
    const fs::path root(a.out);
    ensure_dir(root);
    io::TrajectoryManifest manifest{a.steps, dims.height, dims.width, {}};
    manifest.trajectories.push_back(write_frames(root, "field", "field", frames, start));
    io::write_text_atomic(root / "manifest.json", io::manifest_to_json(manifest));
    ctx.out << "attractor " << field.nearest(frames.back()) << " frames " << frames.size() << '\n';
    return kOk;
}

int cmd_simulate(const Context& ctx, const SimulateArgs& a) {
    require(a.steps >= 1, "--steps must be at least 1");
    if (a.kind == "probes")
        return simulate_probes(ctx, a);
    if (a.kind == "palette")
        return simulate_palette(ctx, a);
    if (a.kind == "field")
        return simulate_field(ctx, a);
    throw Error("unknown simulation kind: " + a.kind);
}

// -- stats -------------------------------------------------------------------

struct StatsArgs {
    std::string manifest;
    std::string out;
};

int cmd_stats(const Context& ctx, const StatsArgs& a) {
    const io::TrajectoryManifest manifest = io::manifest_from_json(io::read_text(a.manifest));
    const SubspaceModel model = load_model(ctx.flags);
    const fs::path base = fs::path(a.manifest).parent_path();
    std::vector<Trajectory> trajectories;
    for (const io::TrajectoryRecord& rec : manifest.trajectories) {
        require(static_cast<int>(rec.timesteps.size()) == manifest.total_steps + 1,
                "trajectory " + rec.name + " does not cover every timestep");
        Trajectory tr(rec.timesteps.size());
        for (std::size_t k = 0; k < rec.files.size(); ++k) {
            require(rec.timesteps[k] == static_cast<int>(k), "trajectory " + rec.name + " timesteps out of order");
            tr[k] = project(average_patches(io::load_latent(base / rec.files[k])), model);
        }
        trajectories.push_back(std::move(tr));
    }
    const StatsTable table = fit_stats(trajectories);
    io::write_text_atomic(a.out, io::stats_to_json(table));
    ctx.out << "trajectories " << trajectories.size() << " T " << table.final_timestep() << '\n';
    return kOk;
}

// -- eval --------------------------------------------------------------------

struct EvalArgs {
    std::string pred;
    std::string ref;
    std::string mask;
    std::string out;
};

int cmd_eval(const Context& ctx, const EvalArgs& a) {
    const ColorGrid pred = io::grid_from_json(io::read_text(a.pred));
    const ColorGrid ref = io::grid_from_json(io::read_text(a.ref));
    require(pred.height() == ref.height() && pred.width() == ref.width(), "grids have different shapes");
    const PatchMask mask = a.mask.empty() ? PatchMask::all(pred.size()) : io::load_mask(a.mask);
    const HslColor pm = masked_mean_color(pred, mask);
    const HslColor rm = masked_mean_color(ref, mask);
    const HslError e = hsl_error(pm, rm);
    const json metrics = {{"de00_per_pixel", grid_de00_per_pixel(pred, ref)},
                          {"de00_mean_pixel", grid_de00_mean_pixel(pred, ref)},
                          {"masked_de00", ciede2000(hsl_to_lab(pm), hsl_to_lab(rm))},
                          {"dH_deg", e.dH},
                          {"dS_pct", 100.0 * e.dS},
                          {"dL_pct", 100.0 * e.dL}};
    const std::string text = metrics.dump(2) + "\n";
    if (!a.out.empty())
        io::write_text_atomic(a.out, text);
    ctx.out << text;
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Latent color subspace toolkit", "lcs"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags g;
    app.add_option("--seed", g.seed, "Noise seed for simulations");
    app.add_option("--embed-seed", g.embed_seed, "Seed of the toy embedder");
    app.add_option("--stats", g.stats, "Stats table JSON, or flux-builtin");
    app.add_option("--model", g.model, "Subspace model JSON");
    app.add_option("--anchors", g.anchors, "Anchor set JSON");

    FitArgs fit;
    auto* fit_cmd = app.add_subcommand("fit", "Fit the subspace and anchors from a probe directory");
    fit_cmd->add_option("dir", fit.dir, "Directory of probe latents")->required();

    ObserveArgs obs;
    auto* obs_cmd = app.add_subcommand("observe", "Decode an intermediate latent to a color grid");
    obs_cmd->add_option("--latent", obs.latent)->required();
    obs_cmd->add_option("--t", obs.t)->required();
    obs_cmd->add_option("--out", obs.out, "Output prefix for .ppm and .json")->required();
    obs_cmd->add_option("--grid", obs.grid, "Patch grid HxW");
    obs_cmd->add_option("--cell-px", obs.cell_px)->check(CLI::PositiveNumber);

    InterveneArgs itv;
    auto* itv_cmd = app.add_subcommand("intervene", "Shift the color of masked patches");
    itv_cmd->add_option("--latent", itv.latent)->required();
    itv_cmd->add_option("--t", itv.t)->required();
    itv_cmd->add_option("--target", itv.target, "Target color #RRGGBB");
    itv_cmd->add_option("--hsl", itv.hsl, "Target color h,s,l");
    itv_cmd->add_option("--mask", itv.mask, "Mask JSON or PGM");
    itv_cmd->add_option("--mode", itv.mode)->check(CLI::IsMember({"type1", "type2", "interp"}));
    itv_cmd->add_option("--out", itv.out)->required();
    itv_cmd->add_option("--report", itv.report, "Also write the report here");
    itv_cmd->add_option("--grid", itv.grid, "Patch grid HxW");

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Run the toy embedder and flow");
    sim_cmd->add_option("kind", sim.kind)->required()->check(CLI::IsMember({"probes", "palette", "field"}));
    sim_cmd->add_option("--out", sim.out)->required();
    sim_cmd->add_option("--grid", sim.grid, "Patch grid HxW");
    sim_cmd->add_option("--steps", sim.steps);
    sim_cmd->add_option("--attractors", sim.attractors, "Comma-separated #RRGGBB solid attractors");
    sim_cmd->add_option("--from", sim.from, "Start latent instead of noise");
    sim_cmd->add_option("--from-t", sim.from_t, "Timestep of the start latent");

    StatsArgs st;
    auto* st_cmd = app.add_subcommand("stats", "Fit timestep statistics from trajectories");
    st_cmd->add_option("manifest", st.manifest)->required();
    st_cmd->add_option("--out", st.out)->required();

    EvalArgs ev;
    auto* ev_cmd = app.add_subcommand("eval", "Compare two color grids");
    ev_cmd->add_option("--pred", ev.pred)->required();
    ev_cmd->add_option("--ref", ev.ref)->required();
    ev_cmd->add_option("--mask", ev.mask);
    ev_cmd->add_option("--out", ev.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInput;
    }

    const Context ctx{g, out};
    try {
        if (fit_cmd->parsed())
            return cmd_fit(ctx, fit);
        if (obs_cmd->parsed())
            return cmd_observe(ctx, obs);
        if (itv_cmd->parsed())
            return cmd_intervene(ctx, itv);
        if (sim_cmd->parsed())
            return cmd_simulate(ctx, sim);
        if (st_cmd->parsed())
            return cmd_stats(ctx, st);
        if (ev_cmd->parsed())
            return cmd_eval(ctx, ev);
        err << "lcs: no command\n";
        return kInput;
    } catch (const Error& e) {
        err << "lcs: " << e.what() << '\n';
        return kInput;
    } catch (const fs::filesystem_error& e) {
        err << "lcs: " << e.what() << '\n';
        return kInput;
    } catch (const std::exception& e) {
        err << "lcs: internal error: " << e.what() << '\n';
        return kInternal;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"lcs"};
    for (const std::string& a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace lcs::cli
