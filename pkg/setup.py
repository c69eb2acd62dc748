#!/usr/bin/env python3

import re
import setuptools

with open('src/gspcert/__init__.py') as f:
    version = re.search(r"__version__\s*=\s*'(.*)'", f.read()).group(1)
with open('README.rst') as f:
    readme  = f.read()

setuptools.setup(
                name='gspcert',
             version=version,
         description=('Construction certificates for mod-p Galois '
                      'representations into GSp(2g, F_p)'),
    long_description=readme,
             license='MIT',
            keywords=('galois representation symplectic similitude '
                      'finite field abelian variety certificate'),
              author='Wilhelm Shen',
        author_email='wilhelmshen@pyforce.com',
         package_dir={'': 'src'},
            packages=['gspcert'],
    install_requires=
             [
                       'numpy>=1.19',
                        'sympy>=1.7',
                       'xxhash>=1.4.4',
                      'ZConfig>=3.5.0'
             ],
      extras_require=
             {
                 'tests': ['pytest>=6.0', 'hypothesis>=5.0']
             },
         classifiers=
             [
                 'License :: OSI Approved :: MIT License',
                 'Programming Language :: Python :: 3.9',
                 'Programming Language :: Python :: Implementation :: '+
                                                              'CPython',
                 'Operating System :: POSIX',
                 'Topic :: Scientific/Engineering :: Mathematics',
                 'Intended Audience :: Science/Research',
                 'Development Status :: 3 - Alpha'
             ],
     python_requires='>=3.9',
        entry_points=
             {
                 'console_scripts': ['gspcert=gspcert.__main__:main']
             }
)
