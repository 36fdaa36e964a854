// Generated by tests/oracle/oracle.py; do not edit by hand.
// Reference values computed with 50+ significant digits.
#pragma once

namespace qharm::oracle {

inline constexpr double pinf_a0p5_q0p5 = 2.8878809508660242e-1;
inline constexpr double pinf_am1_q0p25 = 2.7118193477269588;
inline constexpr double pinf_a0p9_q0p9 = 1.2860674342766176e-6;
inline constexpr double pinf_am0p3_q0p81 = 4.3247615094510271;
inline constexpr double qexp_z0p25_q0p5 = 1.7313733097275318;
inline constexpr double qexp_zm2_q0p5 = 6.99037402991846e-2;
inline constexpr double qexp_zm10_q0p25 = 1.313286758523088e-2;
inline constexpr double jv_z1_qb0p25_v0p5 = -1.3077396223626948e-1;
inline constexpr double jv_z8_qb0p25_v0 = 4.4802067301937166;
inline constexpr double jv_z0p3_qb0p81_v1p5 = -7.9314078020374783e-2;
inline constexpr double jv_z100_qb0p25_v0 = 5.4405616948243908e3;
inline constexpr double jv_z2p20_qb0p25_v0 = -2.6675519230284743e-40;
inline constexpr double kernel_m0_q0p5_v0 = 5.8665286961127968e-1;
inline constexpr double kernel_mm5_q0p5_v0 = -1.3517292214039945e-9;
inline constexpr double kernel_mm12_q0p9_v1p5 = 4.1858278088989776e-8;
inline constexpr double gauss_x1_tq2_q0p5_v0 = 2.9500490166152045e-1;
inline constexpr double gauss_x4_t1_q0p5_v1p5 = 6.6570011286562004e-5;
inline constexpr double c_q0p5_v0 = 2.0;
inline constexpr double c_q0p5_v1p5 = 2.7846843934456165;
inline constexpr double c_q0p9_v0 = 1.0e1;
inline constexpr double B_q0p5_v0 = 5.3402783277892465;
inline constexpr double B_q0p9_v1p5 = 2.3669422646482061e6;
inline constexpr double pfin_a0p3_q0p5_n3 = 5.50375e-1;
inline constexpr double translation_kernel_111_q0p5_v0 = 6.8832317884629823e-1;

}  // namespace qharm::oracle
