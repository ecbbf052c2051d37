#include "cli.hpp"

#include "plexdist/distribute.hpp"
#include "plexdist/error.hpp"
#include "plexdist/invariants.hpp"
#include "plexdist/meshgen.hpp"
#include "plexdist/overlap.hpp"
#include "plexdist/partition.hpp"
#include "plexdist/plex_io.hpp"
#include "plexdist/volume_model.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;

namespace plexdist::cli {

namespace {

struct PipelineFlags {
  int ranks = 2;
  std::string method = "chunk";
  std::uint64_t seed = 0;
  int overlap = 0;
  std::string adjacency = "fv";
  std::string out_dir;
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& f) {
  cmd->add_option("--method", f.method, "Partitioner")
      ->check(CLI::IsMember({"chunk", "random", "greedy-bfs", "identity"}));
  cmd->add_option("--seed", f.seed, "Seed for the random partitioner");
  cmd->add_option("--overlap", f.overlap, "Overlap levels")->check(CLI::NonNegativeNumber);
  cmd->add_option("--adjacency", f.adjacency, "Overlap adjacency")
      ->check(CLI::IsMember({"fe", "fv"}));
  cmd->add_option("--out-dir", f.out_dir, "Output directory")->required();
}

Adjacency parse_adjacency(const std::string& s) { return s == "fe" ? Adjacency::kFE : Adjacency::kFV; }

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail(ErrorKind::kInvalidArgument, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out)
    fail(ErrorKind::kInvalidArgument, "failed writing " + path.string());
}

void print_volume_table(std::ostream& out, const CommWorld& world,
                        const std::optional<StratumCounts>& counts) {
  const auto ledger = world.ledger();
  out << std::left << std::setw(16) << "stage" << std::setw(6) << "rank" << std::setw(14)
      << "sent" << "received\n";
  for (const auto& stage : ledger.stages()) {
    const auto vols = ledger.stage_volumes(stage);
    for (std::size_t r = 0; r < vols.size(); ++r)
      out << std::setw(16) << stage << std::setw(6) << r << std::setw(14) << vols[r].sent
          << vols[r].received << "\n";
  }
  if (!counts)
    return;
  const auto model = predict_volumes(*counts);
  std::vector<std::string> both{std::string(stage::kPartition), std::string(stage::kMigration)};
  for (const auto& s : both) {
    auto c = compare_volumes(predicted_for_stage(model, s), ledger.total_sent(s));
    out << "model " << s << ": predicted " << c.predicted << " measured " << c.measured
        << " relative-error " << c.relative_error << "\n";
  }
  auto total = compare_volumes(model, world, both);
  out << "model partition+migration: predicted " << total.predicted << " measured "
      << total.measured << " relative-error " << total.relative_error << "\n";
}

void write_distributed(const DistributedMesh& mesh, const fs::path& dir) {
  fs::create_directories(dir);
  for (std::size_t r = 0; r < mesh.local.size(); ++r)
    write_plex_file(mesh.local[r], dir / ("rank" + std::to_string(r) + ".plex"));
  write_text(dir / "sf.txt", write_sf_listing(mesh.point_sf));
}

DistributedMesh read_distributed(const fs::path& dir) {
  DistributedMesh mesh;
  for (int r = 0;; ++r) {
    const auto path = dir / ("rank" + std::to_string(r) + ".plex");
    if (!fs::exists(path))
      break;
    mesh.local.push_back(read_plex_file(path));
  }
  if (mesh.local.empty())
    fail(ErrorKind::kInvalidArgument, "no rank0.plex in " + dir.string());
  std::vector<PointId> sizes;
  for (const auto& p : mesh.local)
    sizes.push_back(p.size());
  mesh.point_sf = read_sf_listing(read_text(dir / "sf.txt"), sizes);
  return mesh;
}

void print_ranks(std::ostream& out, const DistributedMesh& mesh) {
  for (std::size_t r = 0; r < mesh.local.size(); ++r) {
    const auto& plex = mesh.local[r];
    out << "rank " << r << " points " << plex.size() << " cells " << plex.num_cells()
        << " ghosts " << mesh.point_sf[r].nleaves() << "\n";
  }
}

int report(std::ostream& out, const std::vector<std::string>& violations) {
  for (const auto& v : violations)
    out << "violation: " << v << "\n";
  out << (violations.empty() ? "ok" : std::to_string(violations.size()) + " violations") << "\n";
  return violations.empty() ? 0 : 1;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parallel unstructured mesh distribution on a simulated communicator", "plexdist"};
  app.require_subcommand(1);

  std::string shape = "box", out_path, in_path;
  int dim = 2, n = 1, levels = 1, parts = 2;
  std::string method = "chunk";
  std::uint64_t seed = 0;

  auto* gen = app.add_subcommand("gen", "Generate a mesh");
  gen->add_option("--shape", shape, "Mesh shape")->check(CLI::IsMember({"box", "doublet"}));
  gen->add_option("--dim", dim, "Box dimension")->check(CLI::IsMember({2, 3}));
  gen->add_option("--n", n, "Cells per box side")->check(CLI::PositiveNumber);
  gen->add_option("--out", out_path, "Output file")->required();

  auto* refine = app.add_subcommand("refine", "Regularly refine a 2D triangle mesh");
  refine->add_option("--levels", levels, "Refinement steps")->check(CLI::NonNegativeNumber);
  refine->add_option("input", in_path, "Input mesh")->required();
  refine->add_option("--out", out_path, "Output file")->required();

  auto* part = app.add_subcommand("partition", "Partition cells and report balance");
  part->add_option("--parts", parts, "Part count")->required()->check(CLI::PositiveNumber);
  part->add_option("--method", method, "Partitioner")
      ->check(CLI::IsMember({"chunk", "random", "greedy-bfs"}));
  part->add_option("--seed", seed, "Seed for the random partitioner");
  part->add_option("input", in_path, "Input mesh")->required();

  PipelineFlags dist_flags;
  auto* dist = app.add_subcommand("distribute", "Distribute a serial mesh to P ranks");
  dist->add_option("--ranks", dist_flags.ranks, "Rank count")->check(CLI::PositiveNumber);
  add_pipeline_flags(dist, dist_flags);
  dist->add_option("input", in_path, "Serial mesh")->required();

  PipelineFlags redist_flags;
  auto* redist = app.add_subcommand("redistribute", "Repartition a distributed mesh");
  add_pipeline_flags(redist, redist_flags);
  redist->add_option("input", in_path, "Directory written by distribute")->required();

  std::uint64_t nc = 0, nf = 0, ne = 0, nv = 0;
  auto* vm = app.add_subcommand("volume-model", "Evaluate the communication volume model");
  vm->add_option("--nc", nc, "Cells");
  vm->add_option("--nf", nf, "Faces");
  vm->add_option("--ne", ne, "Edges");
  vm->add_option("--nv", nv, "Vertices");

  bool boundary = false, skip_adjacency = false;
  auto* check = app.add_subcommand("check", "Run the invariant suite on a mesh or directory");
  check->add_option("path", in_path, "Mesh file or distribute output directory")->required();
  check->add_flag("--boundary", boundary, "Also compare the boundary label to the topology");
  check->add_flag("--skip-adjacency", skip_adjacency, "Skip the FE adjacency symmetry check");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen) {
      Plex plex;
      if (shape == "doublet")
        plex = gen_doublet();
      else
        plex = dim == 2 ? gen_box_2d(n) : gen_box_3d(n);
      write_plex_file(plex, out_path);
      out << "wrote " << out_path << ": " << plex.num_cells() << " cells, " << plex.num_vertices()
          << " vertices, " << plex.num_faces() << " faces, " << plex.num_edges() << " edges\n";
      return 0;
    }
    if (*refine) {
      Plex plex = read_plex_file(in_path);
      for (int k = 0; k < levels; ++k)
        plex = plex_uniform_refine_2d(plex);
      write_plex_file(plex, out_path);
      out << "wrote " << out_path << ": " << plex.num_cells() << " cells\n";
      return 0;
    }
    if (*part) {
      const Plex plex = read_plex_file(in_path);
      const auto graph = cell_graph(plex);
      const auto assignment = make_partitioner(method, seed)->partition(graph, parts, {});
      const auto sizes = part_sizes(assignment, parts);
      for (int k = 0; k < parts; ++k)
        out << "part " << k << " cells " << sizes[k] << "\n";
      out << "edge-cut " << edge_cut(graph, assignment) << "\n";
      return 0;
    }
    if (*dist) {
      const Plex serial = read_plex_file(in_path);
      CommWorld world(dist_flags.ranks);
      auto partitioner = make_partitioner(dist_flags.method, dist_flags.seed);
      const auto mesh = distribute(world, serial, *partitioner,
                                   {dist_flags.overlap, parse_adjacency(dist_flags.adjacency)});
      write_distributed(mesh, dist_flags.out_dir);
      print_ranks(out, mesh);
      print_volume_table(out, world, stratum_counts(serial));
      return 0;
    }
    if (*redist) {
      const auto mesh = read_distributed(in_path);
      CommWorld world(static_cast<int>(mesh.local.size()));
      auto partitioner = make_partitioner(redist_flags.method, redist_flags.seed);
      auto result = redistribute(world, mesh, *partitioner,
                                 {redist_flags.overlap, parse_adjacency(redist_flags.adjacency)});
      write_distributed(result.mesh, redist_flags.out_dir);
      print_ranks(out, result.mesh);
      print_volume_table(out, world, std::nullopt);
      return 0;
    }
    if (*vm) {
      const auto v = predict_volumes({nc, nf, ne, nv});
      out << "Vsf=" << v.sf << "\n"
          << "Vinversion=" << v.inversion << "\n"
          << "Vstratify=" << v.stratify << "\n"
          << "Vpartition=" << v.partition << "\n"
          << "Vcones=" << v.cones << "\n"
          << "Vorientations=" << v.orientations << "\n"
          << "Vsection=" << v.section << "\n"
          << "Vtopology=" << v.topology << "\n"
          << "Vcoordinates=" << v.coordinates << "\n"
          << "Vmarkers=" << v.markers << "\n"
          << "Vmigration=" << v.migration << "\n";
      return 0;
    }
    if (*check) {
      CheckOptions opts;
      opts.adjacency_symmetry = !skip_adjacency;
      if (fs::is_directory(in_path)) {
        const auto mesh = read_distributed(in_path);
        // Without a serial reference, global ids come from the SF itself.
        CommWorld world(static_cast<int>(mesh.local.size()));
        DistributedMesh numbered = mesh;
        numbered.global = create_global_numbering(world, "check", mesh.local, mesh.point_sf).global;
        return report(out, check_distributed(numbered, nullptr, opts));
      }
      const Plex plex = read_plex_file(in_path);
      auto violations = check_plex(plex, opts);
      if (boundary) {
        auto b = check_boundary_label(plex);
        violations.insert(violations.end(), b.begin(), b.end());
      }
      return report(out, violations);
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

} // namespace plexdist::cli
