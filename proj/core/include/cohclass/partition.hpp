#pragma once

#include <compare>
#include <string>
#include <vector>

namespace cohclass {

/// Partition: weakly decreasing positive parts. The empty partition is the
/// type of the zero module over a chain ring / DVR.
using Partition = std::vector<int>;

int partition_weight(const Partition& p);
Partition normalize_partition(Partition p);  // sort desc, drop zeros
std::string partition_str(const Partition& p);

/// mu_i <= lambda_i for all i (missing parts read as 0). Over a chain ring
/// this is exactly the condition for a module of type mu to embed into (or
/// be a quotient of) one of type lambda.
bool fits_componentwise(const Partition& mu, const Partition& lambda);

/// Positivity of the Littlewood-Richardson coefficient c^nu_{lambda,mu}.
/// Over a DVR with any residue field this decides whether a module of type
/// nu has a submodule of type lambda with quotient of type mu (Hall).
bool lr_positive(const Partition& nu, const Partition& lambda, const Partition& mu);

/// All partitions of exactly `size` with parts <= max_part and at most
/// max_parts parts (max_parts < 0: unbounded).
std::vector<Partition> partitions_of(int size, int max_part, int max_parts);

/// All partitions of size <= max_size with parts <= max_part, at most
/// max_parts parts; includes the empty partition.
std::vector<Partition> partitions_up_to(int max_size, int max_part, int max_parts);

/// Types nu with lr_positive(nu; lambda, mu), parts <= max_part: the possible
/// middle terms of a short exact sequence with sub lambda and quotient mu.
std::vector<Partition> lr_middles(const Partition& lambda, const Partition& mu, int max_part);

/// All (alpha, beta) with lr_positive(nu; alpha, beta): the realizable
/// (submodule, quotient) type pairs inside a module of type nu.
std::vector<std::pair<Partition, Partition>> sub_quotient_pairs(const Partition& nu);

/// All partitions mu with mu <= lambda componentwise: the submodule and the
/// quotient types of a torsion chain module of type lambda.
std::vector<Partition> componentwise_dominated(const Partition& lambda);

}  // namespace cohclass
