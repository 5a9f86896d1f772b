import json
import pytest

from fractions import Fraction

from .. import (
    CHECKS,
    GROUPS,
    PARAMS,
    element_from_json,
    element_to_json,
    instance_from_json,
    parse_config,
    run_check,
    run_suite,
    select_checks,
)
from ..cli import main
from ...algebra import Kind, NormVariant, OperatorAlgebra, PointwiseAlgebra, SeriesAlgebra
from ...core.report import Outcome
from ...core.scalar import ComplexScalar
from ...errors import ConfigError


POINTWISE_C4 = {'kind': 'pointwise', 'm': 4, 'n': 3}


def config_text(**fields) -> str:
    return json.dumps({'instance': POINTWISE_C4, **fields})


def config_errors(text: str) -> list[str]:
    with pytest.raises(ConfigError) as excinfo:
        parse_config(text)
    return excinfo.value.errors


class TestSerialize:
    def test_pointwise(self):
        alg = PointwiseAlgebra.create(m=3)
        x = element_from_json([1, {'re': 2, 'im': -1}, 0.5], alg)
        assert x == alg.element(1, 2 - 1j, 0.5)

    def test_exact_rationals(self):
        alg = PointwiseAlgebra.create(m=2, exact=True)
        x = element_from_json([{'re': '1/3', 'im': 0}, '2/5'], alg)
        assert x[0] == ComplexScalar(Fraction(1, 3))
        assert x[1] == ComplexScalar(Fraction(2, 5))

    def test_series_padded(self):
        alg = SeriesAlgebra.create(degree=4)
        assert element_from_json([1, 1], alg) == alg.series(1, 1, 0, 0, 0)

    def test_operator_rows(self):
        alg = OperatorAlgebra.create(d=2)
        x = element_from_json([[1, 2], [0, 1]], alg)
        assert x == alg.element([[1, 2], [0, 1]])

    def test_replay_report_form(self):
        alg = SeriesAlgebra.create(degree=4, exact=True)
        x = alg.series(1, Fraction(1, 2))
        assert element_from_json(element_to_json(x), alg) == x

    def test_wrong_size(self):
        with pytest.raises(ValueError):
            element_from_json([1, 2], PointwiseAlgebra.create(m=3))

    def test_instances(self):
        assert instance_from_json(POINTWISE_C4).n == 3
        series = instance_from_json({'kind': 'truncated_series', 'degree': 8, 'norm_variant': 'eq21_max_product'})
        assert series.norm_variant is NormVariant.EQ21_MAX_PRODUCT
        unitized = instance_from_json({'kind': 'unitization', 'base': {'kind': 'pointwise', 'm': 2}})
        assert unitized.kind is Kind.UNITIZATION
        assert unitized.base.m == 2

    def test_anchors_normalized(self):
        alg = instance_from_json({'kind': 'pointwise', 'm': 4, 'anchors': [[0, 2, 0, 0]]})
        assert alg.n == 2
        assert alg.anchors[0] == PointwiseAlgebra.create(m=4).element(0, 1, 0, 0)

    def test_operator_anchors_are_vectors(self):
        alg = instance_from_json({'kind': 'operator', 'd': 3, 'anchors': [[0, 0, 1]]})
        assert list(alg.anchors[0].coords) == [0, 0, 1]


class TestConfig:
    def test_minimal(self):
        cfg = parse_config(config_text(checks=['n-norm-axioms']))
        assert [c.name for c in cfg.checks] == ['n-norm-axioms']
        assert cfg.instance.n == 3
        assert cfg.seed == 0
        assert not cfg.exact

    def test_defaults_to_every_check(self):
        cfg = parse_config(config_text())
        assert [c.name for c in cfg.checks] == list(CHECKS)

    def test_unknown_check(self):
        errors = config_errors(config_text(checks=['n-norm-axioms', 'speectrum']))
        assert len(errors) == 1
        assert 'speectrum' in errors[0]

    def test_collects_every_error(self):
        errors = config_errors(json.dumps({
            'instance': {'kind': 'pointwise', 'm': 0},
            'checks': ['speectrum'],
            'seed': -1,
            'tolerance': 0,
            'colour': 'blue',
        }))
        assert len(errors) == 5
        assert any('colour' in e for e in errors)
        assert any(e.startswith('instance.m') for e in errors)

    def test_dependent_anchors(self):
        errors = config_errors(json.dumps({
            'instance': {'kind': 'pointwise', 'm': 4, 'anchors': [[0, 1, 0, 0], [0, 2, 0, 0]]},
        }))
        assert any('N1' in e for e in errors)

    def test_missing_anchors(self):
        errors = config_errors(json.dumps({'instance': {'kind': 'pointwise', 'm': 4, 'anchors': []}}))
        assert any('missing anchors' in e for e in errors)

    def test_anchor_count(self):
        errors = config_errors(json.dumps({'instance': {'kind': 'pointwise', 'm': 4, 'n': 3, 'anchors': [[0, 1, 0, 0]]}}))
        assert any('needs 2 anchors' in e for e in errors)

    def test_malformed_json(self):
        errors = config_errors('{"instance": ')
        assert errors[0].startswith('malformed JSON')

    def test_missing_instance(self):
        assert config_errors('{}') == ['instance: missing']

    def test_overrides(self):
        cfg = parse_config(config_text(seed=1), {'seed': 42, 'samples': None, 'arithmetic_mode': 'exact'})
        assert cfg.seed == 42
        assert cfg.exact
        assert cfg.instance.exact

    def test_check_parameters(self):
        cfg = parse_config(config_text(checks=[{'name': 'openness', 'samples': 5, 'perturbations': 10}]))
        (spec,) = cfg.checks
        assert spec.samples == 5
        assert spec.params == {'perturbations': 10}

    def test_unknown_check_parameter(self):
        errors = config_errors(config_text(checks=[
            {'name': 'cauchy-schwarz', 'dims': 5},
            {'name': 'unit-law', 'perturbations': 3},
            {'name': 'tdz-scan', 'k_max': 16},
        ]))
        assert len(errors) == 2
        assert "'dims'" in errors[0] and "'dim'" in errors[0]
        assert 'unit-law' in errors[1]

    def test_declared_parameters_accepted(self):
        checks = [{'name': name, **{key: 1 for key in sorted(keys)}} for name, keys in PARAMS.items() if keys]
        cfg = parse_config(config_text(checks=checks))
        assert {c.name for c in cfg.checks} == {'cauchy-schwarz', 'openness', 'tdz-scan'}

    def test_functional(self):
        cfg = parse_config(config_text(functional={'coeffs': [0, 0, 0, 1], 'label': 'T4'}))
        assert cfg.functional.label == 'T4'
        assert cfg.functional.bound == 1

    def test_subcommand_selection(self):
        cfg = select_checks(parse_config(config_text()), GROUPS['audit'])
        assert [c.name for c in cfg.checks] == ['multiplicativity-audit', 'unit-law', 'mul-continuity']
        with pytest.raises(ConfigError):
            select_checks(parse_config(config_text(checks=['exponential'])), GROUPS['audit'])


class TestSuite:
    def test_default_suite_passes(self):
        cfg = parse_config(config_text(seed=42, samples=40))
        report = run_suite(cfg)
        outcomes = {r.name: r.outcome for r in report.checks}
        assert list(outcomes) == list(CHECKS)
        assert all(o is Outcome.PASS for o in outcomes.values()), outcomes
        assert report.exit_code == 0

    def test_eq21_audit_fails(self):
        cfg = parse_config(json.dumps({
            'instance': {'kind': 'truncated_series', 'degree': 8, 'norm_variant': 'eq21_max_product'},
            'checks': ['multiplicativity-audit'],
            'seed': 42,
            'samples': 50,
        }))
        report = run_suite(cfg)
        (audit,) = report.checks
        assert audit.outcome is Outcome.FAIL
        assert audit.counterexample['pair'] == 'one-plus-t-squared'
        assert audit.counterexample['lhs'] == 2
        assert audit.counterexample['rhs'] == 1
        assert report.exit_code == 1

        recorded = report.to_dict()['checks'][0]['counterexample']['x']
        inst = cfg.instance
        assert element_from_json(recorded, inst) == inst.series(1, 1)

    def test_hypothesis_violated(self):
        cfg = parse_config(json.dumps({'instance': {'kind': 'operator', 'd': 3}, 'checks': ['character-search']}))
        report = run_check(cfg, 'character-search', 1, {})
        assert report.outcome is Outcome.HYPOTHESIS_VIOLATED
        assert report.witness['kind'] == 'operator'

    def test_unitization_has_no_character(self):
        cfg = parse_config(json.dumps({
            'instance': {'kind': 'unitization', 'base': {'kind': 'pointwise', 'm': 2}},
            'checks': ['gkz-forward'],
        }))
        (report,) = run_suite(cfg).checks
        assert report.outcome is Outcome.HYPOTHESIS_VIOLATED
        assert run_suite(cfg).exit_code == 0

    def test_same_config_same_report(self):
        cfg = parse_config(config_text(checks=['n-norm-axioms', 'group-property', 'gkz-forward'], seed=7, samples=30))
        first, second = run_suite(cfg).to_dict(), run_suite(cfg).to_dict()
        first.pop('timing')
        second.pop('timing')
        assert first == second

    def test_exact_reports_are_identical(self):
        text = config_text(checks=['n-norm-axioms', 'unit-law', 'group-property'], seed=42, samples=10,
                           arithmetic_mode='exact')
        first = json.dumps(run_suite(parse_config(text)).to_dict(), sort_keys=True)
        second = json.dumps(run_suite(parse_config(text)).to_dict(), sort_keys=True)
        assert first == second
        assert 'timing' not in json.loads(first)

    def test_seed_echo(self):
        report = run_suite(parse_config(config_text(checks=['unit-law'], seed=42, samples=5))).to_dict()
        assert report['schema_version'] == 1
        assert report['seed'] == 42
        assert report['checks'][0]['seed'] == 42


class TestCli:
    def write(self, tmp_path, doc) -> str:
        path = tmp_path / 'run.json'
        path.write_text(json.dumps(doc), encoding='utf-8')
        return str(path)

    def test_run(self, tmp_path, capsys):
        path = self.write(tmp_path, {'instance': POINTWISE_C4, 'checks': ['unit-law', 'gkz-forward', 'tdz-scan']})
        assert main(['run', '--config', path, '--seed', '42', '--samples', '20']) == 0
        captured = capsys.readouterr()
        report = json.loads(captured.out)
        assert report['seed'] == 42
        assert [c['name'] for c in report['checks']] == ['unit-law', 'gkz-forward', 'tdz-scan']
        assert '3 checks: 3 pass' in captured.err

    def test_subcommand_filters(self, tmp_path, capsys):
        path = self.write(tmp_path, {'instance': POINTWISE_C4, 'checks': ['unit-law', 'gkz-forward']})
        assert main(['audit', '--config', path, '--samples', '10']) == 0
        report = json.loads(capsys.readouterr().out)
        assert [c['name'] for c in report['checks']] == ['unit-law']

    def test_failure_exit_code(self, tmp_path, capsys):
        path = self.write(tmp_path, {
            'instance': {'kind': 'truncated_series', 'degree': 8, 'norm_variant': 'eq21_max_product'},
        })
        assert main(['audit', '--config', path, '--samples', '10']) == 1
        report = json.loads(capsys.readouterr().out)
        assert report['checks'][0]['outcome'] == 'fail'

    def test_config_error(self, tmp_path, capsys):
        path = self.write(tmp_path, {'instance': POINTWISE_C4, 'checks': ['speectrum']})
        assert main(['run', '--config', path]) == 2
        captured = capsys.readouterr()
        assert captured.out == ''
        assert 'speectrum' in captured.err

    def test_missing_file(self, tmp_path):
        assert main(['run', '--config', str(tmp_path / 'absent.json')]) == 2

    def test_default_instance(self, capsys):
        assert main(['check-axioms', '--samples', '20', '--exact']) == 0
        report = json.loads(capsys.readouterr().out)
        assert report['config']['arithmetic_mode'] == 'exact'
        assert report['config']['instance']['m'] == 4
