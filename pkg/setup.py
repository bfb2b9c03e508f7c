from setuptools import setup, find_packages

dependencies = [
    'numpy>=1.17',
    'scipy>=1.8',
]

test_deps = [
    'pytest',
    'pytest-cov',
]

setup(
    name='hybridwpt',
    install_requires=dependencies,
    setup_requires= [
        'pytest-runner',
        'wheel'
    ],
    tests_require=test_deps,
    extras_require={
        'testing': test_deps,
    },
    version='1.0.0',
    packages=find_packages('src'),
    license='Apache 2.0',
    description='Hybrid laser/RF wireless power transfer simulator for low lunar orbit relays',
    package_dir={'lunar_wpt_impl': 'src/lunar_wpt_impl',
                 'beamlink': 'src/beamlink'},
    package_data={'lunar_wpt_impl': ['config/*.json']},
    classifiers=[
        'Intended Audience :: Science/Research',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Physics',
    ],

)
