import io

from gspcert import logging

def test_levels_filter_messages():
    file = io.StringIO()
    logger = logging.Logger(file, level=logging.INFO)
    logger.debug('hidden')
    logger.info('N_1 = 13')
    logger.error('presentation check failed')
    lines = file.getvalue().splitlines()
    assert 2 == len(lines)
    assert lines[0].endswith('INFO N_1 = 13')
    assert lines[1].endswith('ERROR presentation check failed')

def test_disabled_logger_writes_nothing():
    file = io.StringIO()
    logger = logging.Logger(file, level=logging.DISABLED)
    logger.critical('nothing')
    assert '' == file.getvalue()
    assert not logger.enabled_for(logging.CRITICAL)

def test_file_appends(tmp_path):
    path = tmp_path / 'gspcert.log'
    for msg in ('first', 'second'):
        file = logging.File(str(path))
        logger = logging.Logger(file, level=logging.DEBUG,
                                errorlog_fmt='{level} {msg}')
        logger.debug(msg)
        file.close()
    assert 'DEBUG first\nDEBUG second\n' == path.read_text()

def test_scope_prefixes_messages():
    file = io.StringIO()
    logger = logging.Logger(file, level=logging.DEBUG,
                            errorlog_fmt='{scope}{msg}')
    with logger.scope('g=2 p=5'):
        logger.debug('l = 131')
        with logger.scope('auxiliary'):
            logger.debug('v = 521')
    logger.debug('done')
    assert ['[g=2 p=5] l = 131',
            '[g=2 p=5] [auxiliary] v = 521',
            'done'] == file.getvalue().splitlines()
