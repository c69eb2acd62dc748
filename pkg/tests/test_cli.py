import json

import pytest

from gspcert import gvars
from gspcert.__main__ import (EXIT_CAP, EXIT_EXCEPTIONAL, EXIT_FAILURE,
                              EXIT_PASS, main, parse)

def run(*arguments, **kwargs):
    with pytest.raises(SystemExit) as info:
        main(arguments=['-q'] + list(arguments), **kwargs)
    return info.value.code

def test_kg(capsys):
    assert EXIT_PASS == run('kg', '--g', '2')
    out = json.loads(capsys.readouterr().out)
    assert {'2': '8', '3': '2', '5': '1'} == out['factors']

def test_witness(capsys):
    assert EXIT_PASS == run('witness', '--g', '2', '--p', '7')
    assert {'d': '2', 'q': '25', 'exceptional': False,
            'special33': False} == json.loads(capsys.readouterr().out)
    assert EXIT_EXCEPTIONAL == run('witness', '--g', '2', '--p', '2')

def test_selmer(capsys):
    assert EXIT_PASS == run('selmer', '--m', '8')
    assert '2' == capsys.readouterr().out.strip()
    assert EXIT_PASS == run('selmer', '--m', '8', '--with-2-condition')
    assert '1' == capsys.readouterr().out.strip()

def test_scan(capsys):
    assert EXIT_PASS == run('scan', '--gmax', '2', '--pmax', '5')
    lines = capsys.readouterr().out.splitlines()
    assert 3 == len(lines)
    assert lines[0].endswith('exceptional')
    assert lines[2].endswith('d=2 q=13')

def test_construct_then_verify(tmp_path, capsys):
    path = tmp_path / 'c25.json'
    assert EXIT_PASS == run('construct', '--g', '2', '--p', '5',
                            '--out', str(path))
    assert '13' == json.loads(path.read_text())['witness']['q']
    assert EXIT_PASS == run('verify', str(path))
    assert 'pass' == capsys.readouterr().out.strip()

def test_verify_reports_failure(tmp_path, capsys):
    path = tmp_path / 'c25.json'
    run('construct', '--g', '2', '--p', '5', '--out', str(path))
    certificate = json.loads(path.read_text())
    certificate['assumed'] = []
    path.write_text(json.dumps(certificate))
    assert EXIT_FAILURE == run('verify', str(path))
    assert capsys.readouterr().out.startswith(
        'FAIL: assumed ingredients listed')

def test_exceptional_construct(capsys):
    assert EXIT_EXCEPTIONAL == run('construct', '--g', '2', '--p', '3')
    assert 'exceptional' == json.loads(capsys.readouterr().out)['kind']

def test_search_cap():
    assert EXIT_CAP == run('construct', '--g', '2', '--p', '5',
                           config='prime-search-cap 100')
    assert EXIT_CAP == run('construct', '--g', '2', '--p', '5',
                           '--cap', '100')

def test_bad_arguments():
    assert 2 == run('construct', '--g', '2', '--p', '4')
    assert 2 == run('kg', '--g', '0')
    assert 2 == run('kg', '--g', '2', config='no-such-key 1')
    assert 2 == run('verify', '/nonexistent/certificate.json')

def test_config_reaches_settings():
    result = parse(arguments=['kg', '--g', '2'],
                   config='seed 7\nsamples 20\nverbose 9')
    assert (7, 20) == (result.opts.settings.seed,
                       result.opts.settings.samples)
    assert 2 == result.opts.verbose
    assert result.opts.file is None

def test_exit_codes():
    assert (0, 1, 2, 3) == (EXIT_PASS, EXIT_FAILURE, EXIT_EXCEPTIONAL,
                            EXIT_CAP)
    assert {'pass': 0, 'failure': 1, 'exceptional': 2, 'cap': 3} == \
        gvars.exit_codes
    assert gvars.verbosity == sorted(gvars.verbosity, reverse=True)
