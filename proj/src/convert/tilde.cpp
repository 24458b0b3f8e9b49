#include <string>

#include "oneway/convert.hpp"
#include "oneway/error.hpp"

namespace oneway {

std::vector<TildeColumn> build_tilde_projectors(const QuantumOneWayProtocol& qp,
                                                const PartialFunction& f) {
  if (f.z_size() != 2) throw Error(Errc::unsupported, "tilde projectors need a binary function");
  if (qp.is_entangled()) throw Error(Errc::unsupported, "tilde projectors need pure-state messages");
  if (!qp.decoders_projective()) {
    throw Error(Errc::precondition, "decoders must be projective; dilate them first");
  }
  const auto dim = static_cast<Eigen::Index>(qp.register_dim());
  std::vector<TildeColumn> out(f.y_size());
  for (std::size_t y = 0; y < f.y_size(); ++y) {
    auto& col = out[y];
    const Povm& povm = qp.decoder(y);
    for (int b = 0; b < 2; ++b) {
      const auto cls = f.preimage(y, b);
      const ComplexMatrix& e = povm.elements()[povm.index_of(b)];
      col.class_size[b] = cls.size();
      ComplexMatrix gram = ComplexMatrix::Zero(dim, dim);
      for (auto x : cls) {
        const ComplexVector v = e * qp.pure_message(x)->amplitudes();
        gram += v * v.adjoint();
      }
      col.projector[b] = support_projector(gram);
      col.rank[b] = support_rank(gram);
      const ComplexMatrix& p = col.projector[b];

      const std::string where = " (y=" + std::to_string(y) + ", b=" + std::to_string(b) + ")";
      if (min_eigenvalue(e - p) < -tol::kValidation) {
        throw Error(Errc::internal_consistency, "tilde projector exceeds decoder element" + where);
      }
      for (auto x : cls) {
        const auto& psi = qp.pure_message(x)->amplitudes();
        const double lhs = psi.dot(p * psi).real(), rhs = psi.dot(e * psi).real();
        if (std::abs(lhs - rhs) > tol::kValidation) {
          throw Error(Errc::internal_consistency, "tilde projector changes class weight" + where);
        }
      }
      if (col.rank[b] > cls.size()) {
        throw Error(Errc::internal_consistency, "tilde projector rank exceeds class size" + where);
      }
    }
    col.b = col.class_size[0] <= col.class_size[1] ? 0 : 1;
  }
  return out;
}

}  // namespace oneway
