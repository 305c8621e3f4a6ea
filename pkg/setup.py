from setuptools import setup

setup(
    name='NegSSSP',
    version='0.2',
    packages=['negsssp',],
    license='MIT',
    long_description=open('README.md').read(),
    zip_safe=False,
    entry_points = {
        'console_scripts': [
            'negsssp=negsssp.cli:main',
        ]
    },
    include_package_data=True,
    python_requires='>=3.9',
    install_requires = ['numpy>=1.25', 'networkx>=2.6'],
    extras_require = {
        'test': ['pytest', 'hypothesis'],
    }
)
