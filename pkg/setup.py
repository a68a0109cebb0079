from setuptools import find_packages, setup

setup(
    name='genusforge',
    version='0.1',
    include_package_data=True,
    description='Curves over finite fields of any genus with many rational points, with verifiable certificates',
    packages=find_packages(exclude=['tests']),
    install_requires=[
        'django>=4.2,<6.0',
        'numpy>=1.24',
        'sympy>=1.12',
        'mpmath>=1.3',
    ],
    entry_points={
        'console_scripts': [
            'genusforge = genusforge.cli:main',
        ],
    },
    test_suite='runtests.runtests',
)
