#pragma once

#include <optional>
#include <vector>

#include "cmbound/number_field.hpp"

namespace cmbound {

struct CMType {
    unsigned mask = 0;  // bit k set: the conjugate of upper embedding k is chosen
    std::vector<std::size_t> embeddings;
    bool primitive = true;
};

struct CMStructure {
    Field field;
    EmbeddingSet embeddings;
    /* Column j: coordinates of conj(theta^j). */
    QMatrix conjugation;
    FieldElement conj_theta;
    Poly kplus_poly;
    FieldElement kplus_generator;
    std::optional<Integer> k1_discriminant;
    /* Square root of k1_discriminant inside the field, when present. */
    std::optional<FieldElement> sqrt_k1;

    FieldElement conj(const FieldElement& a) const;
};

/* Degree 6 (or 2). Throws NotCM when the field is not a CM field. */
CMStructure detect_cm(const Field& k, long precision_bits = 128);

std::optional<Integer> imaginary_quadratic_subfield(const CMStructure& cm);

std::vector<CMType> enumerate_cm_types(const CMStructure& cm);

}  // namespace cmbound
