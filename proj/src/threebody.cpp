#include "triores/threebody.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace triores {

namespace {

void check_channel(Dimension d, const ChannelSpec& ch) {
    if (d == Dimension::D3) {
        if (ch.pair.ell != 0 || ch.spect.ell != 0)
            throw DomainError("3D model space is restricted to l = L = 0");
    } else {
        const bool ok = (ch.pair.ell == 0 && ch.spect.ell == 0) ||
                        (ch.pair.ell == 1 && ch.spect.ell == 1);
        if (!ok)
            throw DomainError("1D model space allows the even-parity blocks "
                              "(l, L) = (0, 0) and (1, 1) only");
    }
}

// One primitive of a full member, already mapped into bra coordinates:
// coeff * (ux)^l (uX)^L exp(-[quad]).
struct Prim {
    cplx coeff;
    QuadForm quad;
    LinForm ux, uX;
    int l = 0, L = 0;
};

std::array<Prim, 4> expand_member(const ThreeBodyMember& mem, const JacobiTransform* t,
                                  int& count) {
    std::array<Prim, 4> out{};
    count = 0;
    const double nn = mem.pair.norm * mem.spect.norm;
    for (int i = 0; i < mem.pair.n_prim; ++i) {
        for (int j = 0; j < mem.spect.n_prim; ++j) {
            Prim p;
            p.coeff = nn * mem.pair.coeff[i] * mem.spect.coeff[j];
            p.l = mem.pair.ell;
            p.L = mem.spect.ell;
            const cplx nu = mem.pair.nu[i];
            const cplx lam = mem.spect.nu[j];
            if (t == nullptr) {
                p.quad = {nu, 0.0, lam};
                p.ux = {1.0, 0.0};
                p.uX = {0.0, 1.0};
            } else {
                const double m00 = t->m[0][0], m01 = t->m[0][1];
                const double m10 = t->m[1][0], m11 = t->m[1][1];
                p.quad.a = nu * m00 * m00 + lam * m10 * m10;
                p.quad.b = nu * m00 * m01 + lam * m10 * m11;
                p.quad.c = nu * m01 * m01 + lam * m11 * m11;
                p.ux = {m00, m01};
                p.uX = {m10, m11};
            }
            out[count++] = p;
        }
    }
    return out;
}

struct MonoList {
    int n = 0;
    std::array<Monomial, 5> m{};

    void add(const Monomial& mono) { m.at(n++) = mono; }
};

// Monomials of  -lap_axis (P_ket e^{-q_ket}) / e^{-q_ket}  in 1D, where the
// ket polynomial P has at most one x-form and one X-form.
MonoList kinetic_monomials(const Prim& ket, bool axis_x) {
    const LinForm g = axis_x ? LinForm{ket.quad.a, ket.quad.b}
                             : LinForm{ket.quad.b, ket.quad.c};
    const cplx qdd = axis_x ? ket.quad.a : ket.quad.c;

    LinForm pf[2];
    cplx pd[2];
    int k = 0;
    if (ket.l == 1) {
        pf[k] = ket.ux;
        pd[k] = axis_x ? ket.ux.p : ket.ux.q;
        ++k;
    }
    if (ket.L == 1) {
        pf[k] = ket.uX;
        pd[k] = axis_x ? ket.uX.p : ket.uX.q;
        ++k;
    }

    MonoList out;
    if (k == 0) {
        Monomial m0{2.0 * qdd};
        out.add(m0);
        Monomial m1{-4.0};
        m1.push(g);
        m1.push(g);
        out.add(m1);
    } else if (k == 1) {
        Monomial m1{4.0 * pd[0]};
        m1.push(g);
        out.add(m1);
        Monomial m2{2.0 * qdd};
        m2.push(pf[0]);
        out.add(m2);
        Monomial m3{-4.0};
        m3.push(pf[0]);
        m3.push(g);
        m3.push(g);
        out.add(m3);
    } else {
        Monomial m0{-2.0 * pd[0] * pd[1]};
        out.add(m0);
        Monomial m1{4.0 * pd[0]};
        m1.push(pf[1]);
        m1.push(g);
        out.add(m1);
        Monomial m2{4.0 * pd[1]};
        m2.push(pf[0]);
        m2.push(g);
        out.add(m2);
        Monomial m3{2.0 * qdd};
        m3.push(pf[0]);
        m3.push(pf[1]);
        out.add(m3);
        Monomial m4{-4.0};
        m4.push(pf[0]);
        m4.push(pf[1]);
        m4.push(g);
        m4.push(g);
        out.add(m4);
    }
    return out;
}

void push_bra_forms(Monomial& m, const Prim& bra) {
    for (int i = 0; i < bra.l; ++i) m.push({1.0, 0.0});
    for (int i = 0; i < bra.L; ++i) m.push({0.0, 1.0});
}

void push_ket_forms(Monomial& m, const Prim& ket) {
    for (int i = 0; i < ket.l; ++i) m.push(ket.ux);
    for (int i = 0; i < ket.L; ++i) m.push(ket.uX);
}

cplx prim_overlap_like(Dimension d, const Prim& bra, const Prim& ket,
                       const GaussWeight& w) {
    if (d == Dimension::D3) return z_value(w, d);
    Monomial m;
    push_bra_forms(m, bra);
    push_ket_forms(m, ket);
    return moment(w, m) * z_value(w, d);
}

cplx prim_kinetic(Dimension d, const Prim& bra, const Prim& ket, const GaussWeight& w,
                  double cx, double cX) {
    if (d == Dimension::D3) {
        const LinForm gx{ket.quad.a, ket.quad.b};
        const LinForm gX{ket.quad.b, ket.quad.c};
        const cplx tx = 6.0 * ket.quad.a - 12.0 * contraction(w, gx, gx);
        const cplx tX = 6.0 * ket.quad.c - 12.0 * contraction(w, gX, gX);
        return (cx * tx + cX * tX) * z_value(w, d);
    }
    cplx acc = 0.0;
    for (int axis = 0; axis < 2; ++axis) {
        const double cc = axis == 0 ? cx : cX;
        if (cc == 0.0) continue;
        MonoList monos = kinetic_monomials(ket, axis == 0);
        for (int i = 0; i < monos.n; ++i) {
            Monomial m = monos.m[i];
            m.coeff *= cc;
            push_bra_forms(m, bra);
            acc += moment(w, m);
        }
    }
    return acc * z_value(w, d);
}

QuadForm potential_quad(const LinForm& pf, cplx rot) {
    return {rot * pf.p * pf.p, rot * pf.p * pf.q, rot * pf.q * pf.q};
}

} // namespace

std::string ThreeBodySpace::signature() const {
    std::ostringstream os;
    os.precision(17);
    os << "d" << dim_value(dim) << ";set" << set;
    for (const auto& ch : channels) {
        for (const auto* b : {&ch.pair, &ch.spect}) {
            os << ";" << b->n_max << "," << b->first << "," << b->last << "," << b->ell;
            if (b->omega) os << ",w" << *b->omega;
        }
    }
    return os.str();
}

ThreeBodySpace build_space(Dimension d, const std::vector<ChannelSpec>& channels,
                           int set) {
    if (set != 2 && set != 3)
        throw DomainError("basis must live in a BX Jacobi set (2 or 3)");
    if (channels.empty()) throw DomainError("empty model space");
    ThreeBodySpace sp;
    sp.dim = d;
    sp.set = set;
    sp.channels = channels;
    for (const auto& ch : channels) {
        check_channel(d, ch);
        const auto pair_fns = build_functions(ch.pair, d);
        const auto spect_fns = build_functions(ch.spect, d);
        for (const auto& p : pair_fns)
            for (const auto& s : spect_fns) sp.members.push_back({p, s});
    }
    return sp;
}

ThreeBodySpace default_space(Dimension d, int n_per_coord, int set) {
    if (d == Dimension::D3) {
        const int n = n_per_coord > 0 ? n_per_coord : 16;
        ChannelSpec ch;
        ch.pair = {n, 68.83, 0.0058, 0, 0.8};
        ch.spect = {n, 61.85, 0.011, 0, 0.8};
        return build_space(d, {ch}, set);
    }
    const int n = n_per_coord > 0 ? n_per_coord : 32;
    ChannelSpec even;
    even.pair = {n, 318.9, 0.037, 0, {}};
    even.spect = {n, 45.65, 0.023, 0, {}};
    ChannelSpec pp = even;
    pp.pair.ell = 1;
    pp.spect.ell = 1;
    return build_space(d, {even, pp}, set);
}

cplx rearranged_gauss_integral(Dimension d, const ThreeBodyMember& bra,
                               const ThreeBodyMember& ket,
                               const JacobiTransform& ket_from_bra, Kernel kernel,
                               double theta, const LinForm& pair_form, double cx,
                               double cX) {
    const cplx rot_pot = std::exp(cplx(0.0, 2.0 * theta));
    const cplx rot_kin = std::exp(cplx(0.0, -2.0 * theta));
    const JacobiTransform* t = ket_from_bra.is_identity() ? nullptr : &ket_from_bra;

    int nb = 0, nk = 0;
    const auto bras = expand_member(bra, nullptr, nb);
    const auto kets = expand_member(ket, t, nk);

    cplx acc = 0.0;
    for (int i = 0; i < nb; ++i) {
        for (int j = 0; j < nk; ++j) {
            const Prim& pb = bras[i];
            const Prim& pk = kets[j];
            QuadForm a = pb.quad;
            a += pk.quad;
            const cplx cc = pb.coeff * pk.coeff;
            switch (kernel) {
            case Kernel::Overlap: {
                const GaussWeight w = prepare_weight(a);
                acc += cc * prim_overlap_like(d, pb, pk, w);
                break;
            }
            case Kernel::Kinetic: {
                const GaussWeight w = prepare_weight(a);
                acc += cc * rot_kin * prim_kinetic(d, pb, pk, w, cx, cX);
                break;
            }
            case Kernel::GaussianPair: {
                a += potential_quad(pair_form, rot_pot);
                const GaussWeight w = prepare_weight(a);
                acc += cc * prim_overlap_like(d, pb, pk, w);
                break;
            }
            }
        }
    }
    return acc;
}

AssembledProblem assemble(const ThreeBodySpace& space, const MassConfig& mc, double v0,
                          double theta) {
    if (!(theta >= 0.0 && theta < 0.25 * M_PI))
        throw DomainError("rotation angle must sit in [0, pi/4) for Gaussian analyticity");
    const int n = space.size();
    const Dimension d = space.dim;
    const double ks = kinetic_scale(d);
    const double cx = ks * mc.pair_coeff(space.set);
    const double cX = ks * mc.spectator_coeff(space.set);
    const int other = space.set == 2 ? 3 : 2;
    const JacobiTransform t_other = jacobi_transform(mc, space.set, other);
    const LinForm v12_form{t_other.m[0][0], t_other.m[0][1]};
    const LinForm v31_form{1.0, 0.0};
    const JacobiTransform exch = exchange_transform(mc, space.set);
    const cplx rot_pot = std::exp(cplx(0.0, 2.0 * theta));
    const cplx rot_kin = std::exp(cplx(0.0, -2.0 * theta));

    const QuadForm q31 = potential_quad(v31_form, rot_pot);
    const QuadForm q12 = potential_quad(v12_form, rot_pot);

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);

    std::vector<std::array<Prim, 4>> plain(n), exched(n);
    std::vector<int> nprim(n);
    for (int i = 0; i < n; ++i) {
        int np = 0, ne = 0;
        plain[i] = expand_member(space.members[i], nullptr, np);
        exched[i] = expand_member(space.members[i], &exch, ne);
        if (ne != np) throw AssemblyError("primitive count mismatch");
        nprim[i] = np;
    }

    for (int b = 0; b < n; ++b) {
        for (int a = 0; a <= b; ++a) {
            cplx sv = 0.0, hv = 0.0;
            for (int side = 0; side < 2; ++side) {
                const auto& kets = side == 0 ? plain[b] : exched[b];
                for (int i = 0; i < nprim[a]; ++i) {
                    const Prim& pb = plain[a][i];
                    for (int j = 0; j < nprim[b]; ++j) {
                        const Prim& pk = kets[j];
                        const cplx cc = pb.coeff * pk.coeff;
                        QuadForm base = pb.quad;
                        base += pk.quad;
                        const GaussWeight w0 = prepare_weight(base);
                        sv += cc * prim_overlap_like(d, pb, pk, w0);
                        hv += cc * rot_kin * prim_kinetic(d, pb, pk, w0, cx, cX);
                        QuadForm a31 = base;
                        a31 += q31;
                        const GaussWeight w1 = prepare_weight(a31);
                        hv += cc * v0 * prim_overlap_like(d, pb, pk, w1);
                        QuadForm a12 = base;
                        a12 += q12;
                        const GaussWeight w2 = prepare_weight(a12);
                        hv += cc * v0 * prim_overlap_like(d, pb, pk, w2);
                    }
                }
            }
            s(a, b) = s(b, a) = sv;
            h(a, b) = h(b, a) = hv;
        }
    }

    const double s_imag = s.imag().cwiseAbs().maxCoeff();
    const double s_real = s.real().cwiseAbs().maxCoeff();
    if (s_imag > 1e-10 * (s_real + 1.0))
        throw AssemblyError("overlap matrix acquired an imaginary part");

    AssembledProblem out;
    out.h = std::move(h);
    out.s = s.real();
    out.dim = d;
    out.beta = mc.beta;
    out.v0 = v0;
    out.theta = theta;
    out.basis_signature = space.signature();
    return out;
}

} // namespace triores
