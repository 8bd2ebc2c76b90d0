#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmbound/cm_structure.hpp"
#include "cmbound/number_field.hpp"

namespace cmbound {

struct MinusLattice {
    std::vector<FieldElement> basis;
    ZMatrix coords;  // rows: basis in order coordinates
    QMatrix gram;    // -Tr(b_i b_j)
};

enum class MuMethod { Exhaustive, MinkowskiCase1, MinkowskiCase2 };

const char* method_name(MuMethod m);
MuMethod parse_method(const std::string& s);

struct MuCertificate {
    FieldElement mu;
    Integer B;
    MuMethod method = MuMethod::Exhaustive;
    std::optional<Integer> bound_used;
    std::vector<std::string> warnings;
};

/* Matrix of conjugation on order coordinates (x -> x C); nullopt if O is not stable. */
std::optional<QMatrix> order_conjugation(const OrderBasis& o, const CMStructure& cm);
bool is_conjugation_stable(const OrderBasis& o, const CMStructure& cm);
/* O intersected with its conjugate. */
OrderBasis conjugation_stable_part(const OrderBasis& o, const CMStructure& cm);

MinusLattice minus_lattice(const OrderBasis& o, const CMStructure& cm);
/* O_+ = O intersected with K_+, as elements. */
std::vector<FieldElement> plus_lattice(const OrderBasis& o, const CMStructure& cm);
/* O_1 = O intersected with K_1 (requires K_1). */
std::vector<FieldElement> k1_lattice(const OrderBasis& o, const CMStructure& cm);

/* Discriminants of O_+ (over K_+) and O_1 (over K_1). */
Integer plus_discriminant(const OrderBasis& o, const CMStructure& cm);
Integer k1_order_discriminant(const OrderBasis& o, const CMStructure& cm);

MuCertificate find_mu(const OrderBasis& o, const CMStructure& cm, MuMethod mode);

/* Checks every certificate invariant; throws on failure. */
void check_mu_certificate(const MuCertificate& c, const CMStructure& cm);

Integer B_of(const FieldElement& mu);

}  // namespace cmbound
