#include <string>

#include "doctest.h"
#include "ferrosim/config.hpp"
#include "ferrosim/errors.hpp"
#include "ferrosim/runner.hpp"

using namespace ferrosim;

namespace {

template <typename F>
std::string config_error(F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.what();
  }
  FAIL("expected a ConfigError");
  return {};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("study kinds select their own defaults") {
  const SimConfig mfm = default_config(StudyKind::kMfmLoop);
  CHECK(mfm.n_grains == 100);
  CHECK(mfm.sigma_ec_ratio == 0.0);
  CHECK(mfm.wave_steps == 600);
  CHECK(mfm.t_ferro_nm == 10.0);

  const SimConfig sweep = default_config(StudyKind::kFefetSweep);
  CHECK(sweep.n_grains == 4);
  CHECK(sweep.sigma_ec_ratio == 0.4);
  CHECK(sweep.t_ch_nm == 6.0);
  CHECK(sweep.t_box_nm == 30.0);
  CHECK(sweep.mode == ChannelMode::kEnhancement);
  CHECK(sweep.sweep_steps == 300);
  CHECK(sweep.v_ds == 0.05);
  CHECK(sweep.v_read == 1.75);

  const SimConfig study = default_config(StudyKind::kDesignStudy);
  CHECK(study.n_grains == 25);
  CHECK(study.sigma_ec_ratio == 0.4);
  CHECK(study.gate_length_nm == 150.0);
  CHECK(study.t_ch_nm == 40.0);
  CHECK(study.t_box_nm == 200.0);
  CHECK(study.mode == ChannelMode::kDepletion);
  CHECK(study.mobility_kind == MobilityModel::Kind::kConstant);
  CHECK(study.mu0_cm2 == 10.0);
  CHECK(study.study_modes.size() == 2);
  CHECK(study.study_dopings_cm3 == std::vector<double>{1e16, 1e17, 1e18});
  CHECK(study.study_t_ch_nm == std::vector<double>{40.0, 80.0});
}

TEST_CASE("the study kind comes from the document or the subcommand") {
  const SimConfig hinted = parse_config("", StudyKind::kMfmLoop);
  CHECK(hinted.kind == StudyKind::kMfmLoop);

  const SimConfig keyed = parse_config("study = fefet-sweep\n");
  CHECK(keyed.kind == StudyKind::kFefetSweep);
  CHECK(keyed.n_grains == 4);  // kind-specific defaults apply

  const SimConfig both =
      parse_config("[run]\nstudy = design-study\nseed = 9\n",
                   StudyKind::kDesignStudy);
  CHECK(both.kind == StudyKind::kDesignStudy);
  CHECK(both.seed == 9);

  CHECK(contains(config_error([] {
          parse_config("study = mfm-loop\n", StudyKind::kFefetSweep);
        }),
        "conflicts"));
  CHECK(contains(config_error([] { parse_config("[ferro]\nalpha = -1e8\n"); }),
                 "does not set the study kind"));
}

TEST_CASE("parse errors carry the line number") {
  auto with_kind = [](const std::string& body) {
    return "study = mfm-loop\n" + body;
  };
  SUBCASE("unknown key") {
    const std::string msg = config_error(
        [&] { parse_config(with_kind("[ferro]\nbogus = 3\n")); });
    CHECK(contains(msg, "config line 3"));
    CHECK(contains(msg, "unknown key 'bogus'"));
  }
  SUBCASE("unknown section") {
    const std::string msg = config_error(
        [&] { parse_config(with_kind("[grains]\nsigma = 1\n")); });
    CHECK(contains(msg, "config line 3"));
    CHECK(contains(msg, "unknown section [grains]"));
  }
  SUBCASE("malformed number") {
    const std::string msg = config_error(
        [&] { parse_config(with_kind("[ferro]\nalpha = abc\n")); });
    CHECK(contains(msg, "config line 3"));
    CHECK(contains(msg, "expected a number"));
  }
  SUBCASE("malformed integer") {
    const std::string msg = config_error(
        [&] { parse_config(with_kind("[ferro]\nn_grains = many\n")); });
    CHECK(contains(msg, "expected an integer"));
  }
  SUBCASE("malformed boolean") {
    const std::string msg = config_error(
        [&] { parse_config(with_kind("[traps]\nenabled = maybe\n")); });
    CHECK(contains(msg, "expected a boolean"));
  }
  SUBCASE("key before any section") {
    const std::string msg =
        config_error([&] { parse_config("seed = 4\nstudy = mfm-loop\n"); });
    CHECK(contains(msg, "config line 1"));
    CHECK(contains(msg, "before any [section]"));
  }
  SUBCASE("unterminated section header") {
    const std::string msg = config_error(
        [&] { parse_config(with_kind("[ferro\nalpha = -1e8\n")); });
    CHECK(contains(msg, "config line 2"));
  }
  SUBCASE("missing equals sign") {
    const std::string msg =
        config_error([&] { parse_config(with_kind("[ferro]\nalpha\n")); });
    CHECK(contains(msg, "expected 'key = value'"));
  }
}

TEST_CASE("out-of-range settings are rejected") {
  auto reject = [](const std::string& body, const std::string& needle) {
    const std::string msg = config_error(
        [&] { parse_config("study = fefet-sweep\n" + body); });
    CHECK(contains(msg, needle));
  };
  reject("[ferro]\nsigma_ec_ratio = 1\n", "sigma_ec_ratio");
  reject("[ferro]\nsigma_ec_ratio = -0.1\n", "sigma_ec_ratio");
  reject("[ferro]\nn_grains = 0\n", "n_grains");
  reject("[ferro]\nt_ferro_nm = 0\n", "t_ferro_nm");
  reject("[stack]\ntemperature_k = -10\n", "temperature_k");
  reject("[traps]\nenergy_grid_points = 1\n", "energy_grid_points");
  reject("[traps]\nfast_exchange_nm = -0.1\n", "fast_exchange_nm");
  reject("[numerics]\nmesh_refinement = 32\n", "mesh_refinement");
  reject("[numerics]\npoisson_tol = 0\n", "poisson_tol");
  reject("[run]\njobs = -2\n", "jobs");
  reject("[stack]\ndoping_cm3 = -1e17\n", "doping magnitude");
  reject("[stack]\ndoping_cm3 = 1e17 metal\n", "doping polarity");
}

TEST_CASE("doping polarity must match the channel mode") {
  const SimConfig ok = parse_config(
      "study = fefet-sweep\n[fefet]\nmode = depletion\n"
      "[stack]\ndoping_cm3 = 1e17 donor\n");
  CHECK(ok.doping_cm3 == 1e17);
  CHECK(ok.doping_sign == 1);
  CHECK(make_stack(ok).doping == doctest::Approx(1e23).epsilon(1e-12));

  const std::string msg = config_error([] {
    parse_config(
        "study = fefet-sweep\n[fefet]\nmode = depletion\n"
        "[stack]\ndoping_cm3 = 1e17 acceptor\n");
  });
  CHECK(contains(msg, "polarity conflicts"));

  // Without an explicit polarity the channel mode decides the sign.
  const SimConfig bare = parse_config(
      "study = fefet-sweep\n[fefet]\nmode = enhancement\n"
      "[stack]\ndoping_cm3 = 1e17\n");
  CHECK(bare.doping_sign == 0);
  CHECK(make_stack(bare).doping == doctest::Approx(-1e23).epsilon(1e-12));

  // The same document is fine for a capacitor study, which has no channel.
  CHECK_NOTHROW(
      parse_config("study = mfm-loop\n[stack]\ndoping_cm3 = 1e17 acceptor\n"));
}

TEST_CASE("serialization round-trips bit-exactly") {
  for (StudyKind kind :
       {StudyKind::kMfmLoop, StudyKind::kFefetSweep, StudyKind::kDesignStudy,
        StudyKind::kLandauExtract}) {
    const SimConfig cfg = default_config(kind);
    const std::string doc = serialize_config(cfg);
    const SimConfig back = parse_config(doc);
    CHECK(serialize_config(back) == doc);
  }

  // Awkward values survive the trip too.
  SimConfig odd = default_config(StudyKind::kFefetSweep);
  odd.alpha = -1.23456789012345e8;
  odd.temperature_k = 312.0625;
  odd.i_ref = 3.3e-9;
  odd.seed = 18446744073709551615ull;
  odd.study_dopings_cm3 = {2.5e16, 7e17};
  odd.doping_cm3 = 1e17;
  odd.doping_sign = -1;
  const std::string doc = serialize_config(odd);
  CHECK(serialize_config(parse_config(doc)) == doc);
  CHECK(contains(doc, "doping_cm3 = 1e+17 acceptor"));
}

TEST_CASE("the manifest echo re-parses to the same run") {
  const SimConfig cfg = default_config(StudyKind::kDesignStudy);
  const std::string manifest = render_manifest(cfg);
  CHECK(contains(manifest, "# ferrosim"));
  const SimConfig back = parse_config(manifest);  // '#' line is a comment
  CHECK(serialize_config(back) == serialize_config(cfg));
}

TEST_CASE("comments and blank lines are ignored") {
  const SimConfig cfg = parse_config(
      "# leading comment\n"
      "study = mfm-loop   ; trailing comment\n"
      "\n"
      "[ferro]  # section comment\n"
      "n_grains = 7\n");
  CHECK(cfg.kind == StudyKind::kMfmLoop);
  CHECK(cfg.n_grains == 7);
}

TEST_CASE("study lists parse and validate") {
  const SimConfig cfg = parse_config(
      "study = design-study\n[study]\n"
      "modes = enhancement\n"
      "dopings_cm3 = 1e16, 3e17\n"
      "t_ch_nm = 40\n");
  CHECK(cfg.study_modes == std::vector<std::string>{"enhancement"});
  CHECK(cfg.study_dopings_cm3 == std::vector<double>{1e16, 3e17});
  CHECK(cfg.study_t_ch_nm == std::vector<double>{40.0});
  const DesignGrid grid = make_grid(cfg);
  CHECK(grid.modes == std::vector<ChannelMode>{ChannelMode::kEnhancement});

  CHECK(contains(config_error([] {
          parse_config("study = design-study\n[study]\nmodes = sideways\n");
        }),
        "unknown channel mode"));
  CHECK(contains(config_error([] {
          parse_config("study = design-study\n[study]\nmodes = ,\n");
        }),
        "modes list is empty"));
}

TEST_CASE("resolvers convert the config units once") {
  SimConfig cfg = default_config(StudyKind::kFefetSweep);
  cfg.doping_cm3 = 1e17;

  const LandauCoefficients c = make_coefficients(cfg);
  CHECK(c.alpha == cfg.alpha);
  CHECK(c.resistivity == cfg.resistivity);

  const GrainEnsemble e = make_ensemble(cfg);
  CHECK(e.grains.size() == 4);
  CHECK(e.grains[0].length == doctest::Approx(6e-9).epsilon(1e-12));
  CHECK(e.spacer_thickness == doctest::Approx(5e-10).epsilon(1e-12));
  CHECK(e.spacer_eps_r == cfg.eps_r_ferro);

  const Stack1D s = make_stack(cfg);
  CHECK(s.t_ferro == doctest::Approx(10e-9).epsilon(1e-12));
  CHECK(s.t_il == doctest::Approx(1e-9).epsilon(1e-12));
  CHECK(s.t_semi == doctest::Approx(6e-9).epsilon(1e-12));
  CHECK(s.doping == doctest::Approx(-1e23).epsilon(1e-12));  // enhancement
  CHECK(s.mesh.n_nodes() > 0);

  const auto traps = make_traps(cfg);
  REQUIRE(traps.has_value());
  CHECK(traps->density_acceptor == doctest::Approx(8e26).epsilon(1e-12));
  CHECK(traps->density_donor == doctest::Approx(4e26).epsilon(1e-12));
  CHECK(traps->spatial_extent == doctest::Approx(1e-9).epsilon(1e-12));
  CHECK(traps->fast_exchange_depth == doctest::Approx(5e-10).epsilon(1e-12));
  cfg.traps_enabled = false;
  CHECK(!make_traps(cfg).has_value());

  const MobilityModel m = make_mobility(cfg);
  CHECK(m.mu0 == doctest::Approx(300e-4).epsilon(1e-12));

  const SweepProgram p = make_sweep(cfg);
  CHECK(p.v_start == cfg.v_start);
  CHECK(p.steps_per_branch == cfg.sweep_steps);

  cfg.mesh_refinement = 2.0;
  CHECK(make_stack(cfg).mesh.n_nodes() > s.mesh.n_nodes());

  const SelfConsistentOptions o = make_numerics(cfg);
  CHECK(o.dp_tol == cfg.dp_tol);
  CHECK(o.poisson.tol == cfg.poisson_tol);

  const FefetDesign d = make_design(cfg);
  CHECK(d.gate_length == doctest::Approx(24e-9).epsilon(1e-12));
  CHECK(d.width == doctest::Approx(1e-6).epsilon(1e-12));
}

TEST_CASE("csv renderers emit the documented headers") {
  CHECK(render_pv_csv(PvTrace{}) ==
        "time_s,v_V,e_field_Vpm,p_s_Cpm2,p_t_Cpm2,branch\n");

  IVTrace iv;
  iv.n_slices = 2;
  CHECK(render_iv_csv(iv) ==
        "v_gs_V,branch,i_ds_A_per_um,n_inv_mean_cm2,q_trap_mean_Cpcm2"
        ",p_s_grain_0_Cpm2,p_s_grain_1_Cpm2"
        ",n_inv_slice_0_cm2,n_inv_slice_1_cm2"
        ",q_trap_slice_0_Cpcm2,q_trap_slice_1_Cpcm2\n");

  CHECK(render_metrics_csv({}) ==
        "id,mode,doping_cm3,t_ch_nm,mw_V,hrs_ohm,lrs_ohm,ratio,"
        "peak_ids_fwd_A_per_um,peak_ids_bwd_A_per_um,status\n");
}

TEST_CASE("csv rows render deterministically") {
  PvTrace pv;
  PvRecord r;
  r.time = 0.5;
  r.voltage = -1.25;
  r.e_field = -1.25e8;
  r.p_s = 0.01;
  r.p_t = 0.0123;
  r.branch = Branch::kForward;
  pv.records.push_back(r);
  const std::string body = render_pv_csv(pv);
  CHECK(contains(body, "0.5,-1.25,-125000000,0.01,0.0123,forward\n"));
  CHECK(render_pv_csv(pv) == body);

  DesignResult row;
  row.id = "depletion_1e16cm3_40nm";
  row.mode = ChannelMode::kDepletion;
  row.doping_cm3 = 1e16;
  row.t_ch_nm = 40.0;
  row.mw = 1.5;
  row.hrs = 2e9;
  row.lrs = 5e4;
  row.ratio = 4e4;
  row.peak_i_fwd = 7.5e-6;
  row.peak_i_bwd = 8e-6;
  row.status = "solver said \"no\", twice";
  const std::string metrics = render_metrics_csv({row});
  CHECK(contains(metrics,
                 "depletion_1e16cm3_40nm,depletion,1e+16,40,1.5,2000000000,"
                 "50000,40000,7.5e-06,8e-06,\"solver said \"\"no\"\", twice\"\n"));
}
