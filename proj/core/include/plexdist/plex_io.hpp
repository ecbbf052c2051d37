#pragma once

#include "plexdist/plex.hpp"
#include "plexdist/star_forest.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

namespace plexdist {

/// Text mesh format:
///   plexfile 1
///   dim <coordinate dimension>
///   strata <cells> <vertices> <faces> <edges>
///   conesizes ... / cones ... / orients ...
///   coords, then one line of reals per vertex
///   label <name>, then "value <v> <k> <points>" lines (repeatable)
///   end
std::string write_plex(const Plex& plex);
void write_plex(const Plex& plex, std::ostream& out);
/// Throws kParse with the offending line number.
Plex read_plex(std::string_view text);

void write_plex_file(const Plex& plex, const std::filesystem::path& path);
Plex read_plex_file(const std::filesystem::path& path);

/// One line per leaf, "local <l> -> rank <r> index <i>", by local index.
std::string write_sf(const StarForest& sf);

/// All ranks: a "rank <r>" header before each rank's write_sf lines.
std::string write_sf_listing(std::span<const StarForest> sf);
/// Inverse of write_sf_listing; nroots[r] is the mesh size on rank r.
DistributedSF read_sf_listing(std::string_view text, std::span<const PointId> nroots);

} // namespace plexdist
